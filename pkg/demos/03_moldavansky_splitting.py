"""The Moldavansky HNN splitting of a one-relator group.

With the relator written over y_{i,j} = t^i x_j t^-i, the levels 0..m
span a one-relator vertex group; the edge group is free on levels
0..m-1 and includes into the vertex by the identity on one side and the
level shift on the other.
"""

from onerelator import (
    IntegralCharacter,
    Word,
    moldavansky_split,
    parse_presentation,
    y_expand,
    y_rewrite,
)

# The worked example <x1, x2 | x2 x1 x2^2 x1 x2^3 x1^-2> with the
# character counting x1-exponents.
p = parse_presentation("< x1, x2 | x2 x1 x2^2 x1 x2^3 x1^-2 >")
s = moldavansky_split(p, IntegralCharacter((1, 0)))

print("vertex group: ", s.vertex)
print("vertex generators:", [s.vertex_name(i) for i in range(1, s.vertex.rank + 1)])
print("levels m =", s.levels, " edge rank =", s.edge_rank)
for k in range(1, s.edge_rank + 1):
    print("  i+(%s) = %s   i-(%s) = %s"
          % (s.vertex_name(k), s.vertex_name(s.inclusion_plus.images[k - 1][0]),
             s.vertex_name(k), s.vertex_name(s.inclusion_minus.images[k - 1][0])))

# The defining HNN relation t y t^-1 = (level shift of y) holds letter
# for letter after expanding back into the normalized free group.
t = Word([p.rank])
for k in range(1, s.edge_rank + 1):
    lhs = s.expand_vertex_word(s.inclusion_minus(Word([k])))
    rhs = t * s.expand_vertex_word(s.inclusion_plus(Word([k]))) * ~t
    assert lhs == rhs
print("HNN relation verified for all edge generators")

# The rewriting itself is a running-power scan, invertible by expansion.
w = parse_presentation("< x1, x2 | x1 x2 x1 x2 x1^-1 x2^-2 >").relator
yw = y_rewrite(w, stable=2)
print("census word rewrites to", yw, "with levels", yw.lambda_sequence())
assert y_expand(yw) == w
