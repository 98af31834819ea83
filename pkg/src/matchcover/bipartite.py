"""Maximum bipartite matching with certified witnesses.

The matcher is an augmenting-path implementation (Hopcroft-Karp phasing)
that returns an explicit matching.  The Hall deficiency, computed either by
exhaustive subset enumeration or from alternating reachability on a maximum
matching, certifies maximality from the dual side: matching size plus
deficiency always equals the size of the left part.

Covering-induced graphs connect x to y whenever some block of the covering
contains both, so matching numbers between finite sets with respect to a
covering reduce to plain maximum matching here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .cover import Covering, star_iterate

DEFAULT_EXHAUSTIVE_LIMIT = 20

_UNSET = -1


class WitnessError(ValueError):
    """A matching witness failed validation against its graph."""


@dataclass(frozen=True)
class BipartiteGraph:
    """Two ordered vertex lists and a set of (left-index, right-index) edges."""

    left: tuple
    right: tuple
    edges: frozenset

    def __post_init__(self):
        nl, nr = len(self.left), len(self.right)
        for i, j in self.edges:
            if not (0 <= i < nl and 0 <= j < nr):
                raise ValueError(f"edge ({i},{j}) out of range")

    def adjacency(self) -> list:
        """Right neighbors per left index, ascending (fixes determinism)."""
        adj: list = [[] for _ in self.left]
        for i, j in sorted(self.edges):
            adj[i].append(j)
        return adj


@dataclass(frozen=True)
class MatchingWitness:
    """An injective partial map left -> right, stored as index pairs."""

    pairs: tuple

    def __len__(self) -> int:
        return len(self.pairs)


def validate_witness(graph: BipartiteGraph, witness: MatchingWitness) -> None:
    """Raise WitnessError unless the witness is a matching of the graph."""
    seen_left: set = set()
    seen_right: set = set()
    for i, j in witness.pairs:
        if (i, j) not in graph.edges:
            raise WitnessError(f"pair ({i},{j}) is not an edge")
        if i in seen_left:
            raise WitnessError(f"left index {i} matched twice")
        if j in seen_right:
            raise WitnessError(f"right index {j} matched twice")
        seen_left.add(i)
        seen_right.add(j)


def max_matching(graph: BipartiteGraph) -> tuple[int, MatchingWitness]:
    """Maximum matching via Hopcroft-Karp.

    Left vertices are scanned in index order and adjacency lists are sorted,
    so the returned witness is deterministic for a fixed input ordering.
    """
    adj = graph.adjacency()
    nl = len(graph.left)
    match_l = [_UNSET] * nl
    match_r = [_UNSET] * len(graph.right)
    dist = [0] * nl
    inf = nl + 1

    def bfs() -> bool:
        queue = []
        for u in range(nl):
            if match_l[u] == _UNSET:
                dist[u] = 0
                queue.append(u)
            else:
                dist[u] = inf
        found = False
        head = 0
        while head < len(queue):
            u = queue[head]
            head += 1
            for v in adj[u]:
                w = match_r[v]
                if w == _UNSET:
                    found = True
                elif dist[w] == inf:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return found

    def dfs(u: int) -> bool:
        for v in adj[u]:
            w = match_r[v]
            if w == _UNSET or (dist[w] == dist[u] + 1 and dfs(w)):
                match_l[u] = v
                match_r[v] = u
                return True
        dist[u] = inf
        return False

    size = 0
    while bfs():
        for u in range(nl):
            if match_l[u] == _UNSET and dfs(u):
                size += 1
    pairs = tuple((u, match_l[u]) for u in range(nl) if match_l[u] != _UNSET)
    return size, MatchingWitness(pairs)


def neighborhood(graph: BipartiteGraph, left_indices: Iterable[int]) -> set:
    probe = set(left_indices)
    return {j for (i, j) in graph.edges if i in probe}


def hall_deficiency(
    graph: BipartiteGraph, exhaustive_limit: int = DEFAULT_EXHAUSTIVE_LIMIT
) -> tuple[int, tuple]:
    """Largest value of |S| - |N(S)| over S inside the left part.

    Up to ``exhaustive_limit`` left vertices all subsets are enumerated and
    the first maximizer in mask order is reported.  Beyond the limit the
    deficiency is recovered from a maximum matching, with the attaining
    subset rebuilt from alternating reachability (the Koenig construction),
    which is exact as well.
    """
    nl = len(graph.left)
    if nl <= exhaustive_limit:
        nbr_mask = [0] * nl
        for i, j in graph.edges:
            nbr_mask[i] |= 1 << j
        best = 0
        best_mask = 0
        for mask in range(1 << nl):
            union = 0
            size = 0
            m = mask
            while m:
                low = m & -m
                union |= nbr_mask[low.bit_length() - 1]
                size += 1
                m ^= low
            value = size - union.bit_count()
            if value > best:
                best = value
                best_mask = mask
        witness = tuple(graph.left[i] for i in range(nl) if best_mask >> i & 1)
        return best, witness

    size, witness = max_matching(graph)
    matched_l = {i: j for i, j in witness.pairs}
    matched_r = {j: i for i, j in witness.pairs}
    adj = graph.adjacency()
    # alternating reachability from unmatched left vertices
    reach = [u for u in range(nl) if u not in matched_l]
    seen_l = set(reach)
    seen_r: set = set()
    head = 0
    while head < len(reach):
        u = reach[head]
        head += 1
        for v in adj[u]:
            if v in seen_r:
                continue
            seen_r.add(v)
            w = matched_r.get(v)
            if w is not None and w not in seen_l:
                seen_l.add(w)
                reach.append(w)
    atoms = tuple(graph.left[i] for i in sorted(seen_l))
    return nl - size, atoms


def has_perfect_matching(graph: BipartiteGraph) -> bool:
    size, _ = max_matching(graph)
    return size == len(graph.left)


def covering_graph(e: Iterable, f: Iterable, u: Covering) -> BipartiteGraph:
    """Graph joining x in e to y in f when some block contains both."""
    left = u.ground.canon(e)
    right = u.ground.canon(f)
    left_pos = {a: i for i, a in enumerate(left)}
    right_pos = {a: j for j, a in enumerate(right)}
    edges = set()
    for block in u.block_sets:
        block_left = [left_pos[a] for a in block if a in left_pos]
        block_right = [right_pos[a] for a in block if a in right_pos]
        for i in block_left:
            for j in block_right:
                edges.add((i, j))
    return BipartiteGraph(left, right, frozenset(edges))


def mu_with_witness(e: Iterable, f: Iterable, u: Covering) -> tuple[int, MatchingWitness]:
    return max_matching(covering_graph(e, f, u))


def mu(e: Iterable, f: Iterable, u: Covering) -> int:
    return mu_with_witness(e, f, u)[0]


def mu_partition(e: Iterable, f: Iterable, p: Covering) -> int:
    """Closed form for partitions: sum of min(|e & B|, |f & B|) over blocks.

    Valid because disjoint blocks make the covering graph a disjoint union
    of complete bipartite graphs.
    """
    if not p.is_partition():
        raise ValueError("covering is not a partition")
    left = set(p.ground.canon(e))
    right = set(p.ground.canon(f))
    total = 0
    for block in p.block_sets:
        total += min(len(block & left), len(block & right))
    return total


def compose_matchings(
    sets: Sequence[Iterable],
    witnesses: Sequence[MatchingWitness],
    u: Covering,
) -> MatchingWitness:
    """Relational composition of a chain of matchings.

    ``witnesses[i]`` must be a matching in the covering graph between
    ``sets[i]`` and ``sets[i+1]``.  The composite, restricted to indices
    where the whole chain is defined, is a matching between the first and
    last set with respect to the (n-1)-fold star of ``u``; its size is at
    least the sum of the chain sizes minus the sizes of the interior sets.
    """
    if len(sets) != len(witnesses) + 1:
        raise ValueError("need exactly one more set than witnesses")
    if not witnesses:
        raise ValueError("empty chain")
    canon_sets = [u.ground.canon(s) for s in sets]
    maps = []
    for i, witness in enumerate(witnesses):
        graph = covering_graph(canon_sets[i], canon_sets[i + 1], u)
        validate_witness(graph, witness)
        maps.append(dict(witness.pairs))
    pairs = []
    for start in sorted(maps[0]):
        idx = start
        alive = True
        for step in maps:
            if idx not in step:
                alive = False
                break
            idx = step[idx]
        if alive:
            pairs.append((start, idx))
    composed = MatchingWitness(tuple(pairs))
    target = covering_graph(
        canon_sets[0], canon_sets[-1], star_iterate(u, len(witnesses) - 1)
    )
    validate_witness(target, composed)
    return composed
