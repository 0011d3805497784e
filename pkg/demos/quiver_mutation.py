"""Quivers of divides and mutation equivalence.

Two different divides of the E6 singularity produce different-looking
quivers; a bounded canonical-form search finds an explicit mutation sequence
relating them, and replaying the witness confirms it.
"""

from morsify import (
    Budget,
    Equivalent,
    format_quiver,
    is_isomorphic,
    mutate_seq,
    mutation_equivalent,
    quiver_of_divide,
    scannable,
    scannable_to_planar,
)

d1 = scannable(3, left=(2,), events=(1, 2, 1), right=(2,))
d2 = scannable(3, left=(2,), events=(2, 1, 2), right=(2,))

q1 = quiver_of_divide(scannable_to_planar(d1))
q2 = quiver_of_divide(scannable_to_planar(d2))
print("quiver of the first divide:")
print(format_quiver(q1))
print("quiver of the second divide:")
print(format_quiver(q2))

res = mutation_equivalent(q1, q2, Budget(max_states=100000))
assert isinstance(res, Equivalent)
print("mutation witness:", " ".join(map(str, res.witness)) or "(already isomorphic)")

replayed = mutate_seq(q1, res.witness)
assert is_isomorphic(replayed, q2)
print("replaying the witness reaches the second quiver, up to isomorphism.")
