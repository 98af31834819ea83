"""Walk through the covering calculus on a small path-shaped example.

Run:  python3 demos/01_cover_calculus.py
"""

from matchcover import Covering, GroundSet, join, refines, star_covering, star_iterate

ground = GroundSet([1, 2, 3, 4, 5])

# overlapping pairs along a path, and the parity classes
path = Covering(ground, [[1, 2], [2, 3], [3, 4], [4, 5]])
parity = Covering(ground, [[1, 3, 5], [2, 4]])

print("path blocks:  ", path.blocks)
print("parity blocks:", parity.blocks)

# the whole-set covering is refined by everything
top = Covering(ground, [[1, 2, 3, 4, 5]])
print("top refined by path?  ", refines(top, path))
print("path refined by parity?", refines(path, parity))

# the join collects all pairwise intersections: the common refinement
common = join(path, parity)
print("join blocks:", common.blocks)
print("join refines path:  ", refines(path, common))
print("join refines parity:", refines(parity, common))

# stars grow blocks by one round of overlap; iterating saturates quickly
print("star once: ", star_covering(path).blocks)
print("star twice:", star_iterate(path, 2).blocks)

# partitions are fixed points of the star operation
print("parity* == parity:", star_covering(parity) == parity)
