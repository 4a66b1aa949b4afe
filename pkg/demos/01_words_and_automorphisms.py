"""Free-group words, Nielsen moves, and Whitehead minimization.

Words are freely reduced sequences of signed generators; automorphisms
are built from elementary moves and always carry a replayable inverse.
"""

from onerelator import (
    canonical_cyclic,
    is_primitive,
    nielsen_invert,
    nielsen_multiply,
    parse_word,
    proper_free_factor,
    whitehead_minimize,
)

# Two input grammars: explicit indices, or compact letters (A = a^-1).
trefoil = parse_word("x1^2 x2^-3")
assert trefoil == parse_word("aaBBB")
print("trefoil relator:", trefoil)

# Group operations: * concatenates and reduces, ~ inverts.
u = parse_word("x1 x2")
print("u * ~u =", repr(u * ~u))

# Conjugacy-and-inversion classes have a canonical representative.
print("same class:", canonical_cyclic(trefoil) == canonical_cyclic(~trefoil))

# Nielsen transformations act by substitution.
tau = nielsen_multiply(2, 1, 2)          # x1 -> x1 x2
print("tau(trefoil) =", tau(trefoil))
print("tau^-1(tau(trefoil)) =", tau.inverse()(tau(trefoil)))
print("inversion move:", nielsen_invert(2, 2)(trefoil))

# Whitehead peak reduction finds the shortest word in the whole
# automorphism orbit, together with the automorphism realizing it.
for text in ("x1 x2", "x1 x2 x1", "x1^2 x2^-3", "x1 x2 x1^-1 x2^-1"):
    w = parse_word(text)
    minimal, theta = whitehead_minimize(w, 2)
    print("%-18s -> minimal %-10r length %d   primitive: %s"
          % (text, minimal, len(minimal), is_primitive(w, 2)))
    assert theta(w) == minimal

# A word lying in a proper free factor is detected by the same search.
result = proper_free_factor(parse_word("x1 x2 x1^-1 x2^-1"), 3)
theta, omitted = result
print("commutator in rank 3 omits generator:", omitted)
