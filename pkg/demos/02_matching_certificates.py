"""Matching numbers between sets under a covering, certified from both sides.

The matcher returns an explicit matching; the Hall deficiency names a subset
of the left side whose neighborhood is too small, so either way you hold a
short certificate that the reported number is exact.

Run:  python3 demos/02_matching_certificates.py
"""

from matchcover import (
    Covering,
    GroundSet,
    covering_graph,
    hall_deficiency,
    max_matching,
    mu,
    mu_partition,
)

ground = GroundSet(range(6))
parity = Covering(ground, [[0, 2, 4], [1, 3, 5]])

e, f = [0, 1, 2], [1, 2, 3]
graph = covering_graph(e, f, parity)
print("edges join equal parity only:", sorted(graph.edges))

size, witness = max_matching(graph)
print("matching number:", size)
print("witness pairs (left idx -> right idx):", witness.pairs)

# partitions admit a closed form: sum of min block counts
print("closed form agrees:", mu_partition(e, f, parity) == mu(e, f, parity) == size)

# the dual certificate: a subset with deficient neighborhood
deficiency, subset = hall_deficiency(graph)
print("deficiency:", deficiency, "attained by left subset", subset)
print("identity check:", size + deficiency == len(graph.left))
