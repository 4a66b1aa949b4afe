"""Abelianization invariants and element orders in H1.

For a one-relator presentation the first homology is the quotient of
Z^rank by the relator's exponent vector, so the free rank and the
single torsion coefficient come from a gcd, and orders of elements are
decided by proportionality against the primitive kernel direction.
"""

import math

from onerelator import (
    Word,
    abelianization,
    element_order_in_h1,
    parse_presentation,
    parse_word,
)

# The census manifold M017: H1 = Z x Z/7, and the longitude
# has order exactly 7 (so any non-separating surface needs at least
# seven boundary components).
m017 = parse_presentation(
    "< x1, x2 | x1^2 x2 x1^3 x2 x1^2 x2^-2 > ; label=M017")
print(m017.label, "abelianization:", abelianization(m017).describe())

longitude = parse_word("x2^-4 x1^2 x2 x1^2 (x1^3 x2 x1^2)^3", 2, parens=True)
print("longitude exponent vector:",
      tuple(longitude.exponent_sum(g) for g in (1, 2)))
print("longitude order in H1:", element_order_in_h1(m017, longitude))
print("relator order in H1:", element_order_in_h1(m017, m017.relator))
print("x2 order in H1:", element_order_in_h1(m017, Word([2])))
assert element_order_in_h1(m017, Word([2])) == math.inf

# More examples.
for text in ("< x1, x2 | x1^2 x2^-3 >",
             "< x1, x2 | x1 x2 x1^-1 x2^-1 >",
             "< x1, x2 | >",
             "< x1 | x1^12 >"):
    p = parse_presentation(text)
    print("%-32s H1 = %s" % (text, abelianization(p).describe()))
