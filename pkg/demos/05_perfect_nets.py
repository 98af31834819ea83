"""Perfect nets in finite groups: minimal covering sets with perfect matchings.

Given U containing the identity, intersecting all conjugates of U gives a
core V whose translates tile the group; a minimum F with V*F = G is found
by exact branch and bound, and every translate gF then matches F perfectly
inside the covering by translates of U^{-1}U.

Run:  python3 demos/05_perfect_nets.py
"""

from matchcover import cyclic_group, perfect_net, symmetric_group

z6 = cyclic_group(6)
net = perfect_net(z6, [0, 1])
print("Z/6 with U = {0,1}:")
print("  V =", net.v_set, " F =", net.f_set, " minimal:", net.minimal)
for g, witness in net.matchings[:3]:
    pairs = [(net.f_set[i], z6.translate(g, net.f_set)[j]) for i, j in witness.pairs]
    print(f"  g = {g}: matching {pairs}")
print("  ... all", len(net.matchings), "translates perfect")

s3 = symmetric_group(3)
rotations = [s3.parse_elem(p) for p in ("012", "120", "201")]
net3 = perfect_net(s3, rotations)
print("S3 with U = rotations:")
print("  V =", [s3.elem_str(v) for v in net3.v_set])
print("  F =", [s3.elem_str(f) for f in net3.f_set], " minimal:", net3.minimal)
print("  all", len(net3.matchings), "translates perfect")
