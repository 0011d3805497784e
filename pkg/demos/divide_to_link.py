"""From a scannable divide to its link, two independent ways.

Walks the headline pipeline: a three-strand divide is compiled to a positive
braid word, and independently turned into a plabic fence whose admissible
orientation yields a link diagram.  Both routes must describe the same link,
which the invariant fingerprint (components, Alexander, Jones) certifies.
"""

from morsify import (
    admissible_orientation,
    alexander,
    beta_of_scannable,
    cell_count,
    closure,
    fence_of_divide,
    fingerprint,
    format_braid_word,
    format_poly,
    left_normal_form,
    link_of_oriented_plabic,
    scannable,
    scannable_to_planar,
)

divide = scannable(3, left=(2,), events=(1, 1, 2, 1), right=(1,))
print("divide: k=3, left turns {2}, events 1 1 2 1, right turns {1}")
print("cells:", cell_count(scannable_to_planar(divide)))

beta = beta_of_scannable(divide)
print("\nbraid word:", format_braid_word(beta))
print("left normal form:", left_normal_form(beta))

fp_braid = fingerprint(beta.letters, beta.k, include_jones=True, cap=32)
print("\nroute 1 (braid closure):")
print("  components:", fp_braid[0])
print("  alexander:", format_poly(fp_braid[1]))
print("  jones:", format_poly(fp_braid[2], var="s"))

fence = fence_of_divide(divide)
orientation = admissible_orientation(fence)
diagram = link_of_oriented_plabic(fence, orientation)
fp_fence = fingerprint(diagram, include_jones=True, cap=32)
print("\nroute 2 (oriented plabic fence):")
print("  crossings in the diagram:", len(diagram.crossings))
print("  components:", fp_fence[0])
print("  alexander:", format_poly(fp_fence[1]))
print("  jones:", format_poly(fp_fence[2], var="s"))

assert fp_braid == fp_fence
print("\nthe two routes agree.")

# For comparison: the (3,4)-torus knot of the E6 singularity x^4 + y^3.
e6 = scannable(3, left=(2,), events=(1, 2, 1), right=(2,))
b = beta_of_scannable(e6)
print("\nE6 divide braid:", format_braid_word(b))
print("E6 alexander:", format_poly(alexander(closure(b.letters, b.k))))
