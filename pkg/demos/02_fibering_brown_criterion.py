"""Brown's fibering criterion and the non-3-manifold certificate.

For a surjection phi to Z killing the relator, rewrite the relator over
the kernel generators y_i = t^i x t^-i and inspect the level sequence:
the kernel is finitely generated iff the rank is 2 and both extrema of
the sequence are attained exactly once.  A sequence with exactly one
unique extremum certifies that the group is not the fundamental group
of any compact orientable 3-manifold.
"""

from onerelator import (
    brown_test,
    canonical_vanishing_character,
    non_manifold_certificate,
    parse_presentation,
)

examples = [
    ("census word", "< x1, x2 | x1 x2 x1 x2 x1^-1 x2^-2 >"),
    ("trefoil", "< x1, x2 | x1^2 x2^-3 >"),
    ("Baumslag-Solitar p=2", "< x1, x2 | x2 x1 x2^2 x1^-1 >"),
    ("Baumslag-Solitar p=5", "< x1, x2 | x2 x1 x2^5 x1^-1 >"),
    ("torus relation", "< x1, x2 | x1 x2 x1^-1 x2^-1 >"),
]

for name, text in examples:
    p = parse_presentation(text)
    phi = canonical_vanishing_character(p)
    report = brown_test(p, phi)
    print("%-22s phi=%-9s lambda=%-18s verdict=%s"
          % (name, phi.values, report.lambda_sequence, report.verdict))
    certificate = non_manifold_certificate(p)
    if certificate:
        print("%22s certificate: %s -- not a compact orientable"
              " 3-manifold group" % ("", certificate))

# The Baumslag-Solitar family <x1, x2 | x2 x1 x2^p x1^-1>: for |p| > 1
# the level sequence is (0, 1, ..., 1), a unique minimum with repeated
# maximum, so the group is excluded; p = 1 gives Z^2, which fibers.
for power in (1, 2, 3, 5):
    p = parse_presentation("< x1, x2 | x2 x1 x2^%d x1^-1 >" % power)
    print("BS p=%d:" % power, non_manifold_certificate(p))
