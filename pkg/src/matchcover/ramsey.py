"""Matching condition for colorings of embeddings between finite metric spaces.

Works over finite metric spaces with rational distances and no extra
relational structure.  Embeddings are isometric maps; the sup-distance
between two embeddings with a common source is taken over the SOURCE
points (the natural reading when both maps are defined on the source; the
alternative convention of ranging over the target makes no sense for
partial images and is not used here).

The matching condition asks, for every coloring of the source-to-large
embeddings, for a finite family of mid-to-large embeddings whose induced
bipartite graphs (composites landing near a common color class) have
matching number at least (1-eps) times the family size, for every pair of
source-to-mid embeddings.  Eps-balls around color classes use strict
inequality.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .bipartite import BipartiteGraph, max_matching

MAX_SOURCE_POINTS = 6
MAX_TARGET_POINTS = 12


class CapExceeded(ValueError):
    """An enumeration would exceed its configured size cap."""


def _as_fraction(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass Fraction, int, or 'p/q' string")
    return Fraction(x)


@dataclass(frozen=True)
class FinMetric:
    """A finite metric space with rational distances, validated on load."""

    points: tuple
    dist: tuple  # tuple of tuples of Fraction

    def __post_init__(self):
        n = len(self.points)
        if n == 0:
            raise ValueError("metric space must be non-empty")
        if len(set(self.points)) != n:
            raise ValueError("duplicate point names")
        if len(self.dist) != n or any(len(row) != n for row in self.dist):
            raise ValueError("distance matrix is not square")
        for i in range(n):
            if self.dist[i][i] != 0:
                raise ValueError(f"nonzero diagonal at {self.points[i]!r}")
            for j in range(n):
                if self.dist[i][j] != self.dist[j][i]:
                    raise ValueError("distance matrix is not symmetric")
                if i != j and self.dist[i][j] <= 0:
                    raise ValueError("distinct points at non-positive distance")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if self.dist[i][k] > self.dist[i][j] + self.dist[j][k]:
                        raise ValueError(
                            "triangle inequality fails at "
                            f"({self.points[i]!r},{self.points[j]!r},{self.points[k]!r})"
                        )

    @classmethod
    def build(cls, points: Sequence, dist: Sequence[Sequence]) -> "FinMetric":
        rows = tuple(tuple(_as_fraction(x) for x in row) for row in dist)
        return cls(tuple(points), rows)

    def __len__(self) -> int:
        return len(self.points)

    def d(self, i: int, j: int) -> Fraction:
        return self.dist[i][j]


@dataclass(frozen=True)
class Embedding:
    """An isometric map, stored as target point indices per source point."""

    source: FinMetric
    target: FinMetric
    images: tuple

    def __post_init__(self):
        n = len(self.source)
        if len(self.images) != n:
            raise ValueError("image tuple has wrong length")
        for idx in self.images:
            if not (0 <= idx < len(self.target)):
                raise ValueError(f"image index {idx} out of range")
        for i in range(n):
            for j in range(n):
                if self.target.d(self.images[i], self.images[j]) != self.source.d(i, j):
                    raise ValueError(
                        "map is not isometric at "
                        f"({self.source.points[i]!r},{self.source.points[j]!r})"
                    )

    def mapping(self) -> dict:
        return {
            self.source.points[i]: self.target.points[self.images[i]]
            for i in range(len(self.source))
        }


def embeddings(a: FinMetric, c: FinMetric) -> tuple:
    """All isometric maps from a into c, lexicographic by image indices."""
    if len(a) > MAX_SOURCE_POINTS:
        raise CapExceeded(f"source has more than {MAX_SOURCE_POINTS} points")
    if len(c) > MAX_TARGET_POINTS:
        raise CapExceeded(f"target has more than {MAX_TARGET_POINTS} points")
    n, m = len(a), len(c)
    found = []
    images: list = []

    def extend(i: int) -> None:
        if i == n:
            found.append(Embedding(a, c, tuple(images)))
            return
        for cand in range(m):
            if all(c.d(images[j], cand) == a.d(j, i) for j in range(i)):
                images.append(cand)
                extend(i + 1)
                images.pop()

    extend(0)
    return tuple(found)


def compose(inner: Embedding, outer: Embedding) -> Embedding:
    """Composite embedding; isometry is closed under composition."""
    if inner.target != outer.source:
        raise ValueError("embeddings do not chain")
    return Embedding(
        inner.source, outer.target, tuple(outer.images[i] for i in inner.images)
    )


def rho(alpha: Embedding, beta: Embedding) -> Fraction:
    """Sup distance between two embeddings with common source and target."""
    if alpha.source != beta.source or alpha.target != beta.target:
        raise ValueError("embeddings must share source and target")
    return max(
        alpha.target.d(i, j) for i, j in zip(alpha.images, beta.images)
    )


def _near_colors(delta: Embedding, classes: dict, eps: Fraction) -> frozenset:
    """Colors whose class contains an embedding strictly within eps."""
    out = set()
    for color, members in classes.items():
        if any(rho(delta, member) < eps for member in members):
            out.add(color)
    return frozenset(out)


def ramsey_mu(
    psi: Sequence[Embedding],
    alpha: Embedding,
    beta: Embedding,
    phi: Mapping[Embedding, int],
    eps,
    validate: bool = True,
) -> int:
    """Matching number of the color-proximity graph on a family of embeddings.

    ``psi`` lists mid-to-large embeddings indexed by a finite set F;
    ``alpha`` and ``beta`` are source-to-mid embeddings.  Indices gamma and
    gamma' are joined when the composites psi[gamma] o alpha and
    psi[gamma'] o beta both lie strictly within eps of a single color class
    of ``phi``.  Computed through the bipartite matcher.
    """
    eps = _as_fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if not psi:
        raise ValueError("family must be non-empty")
    if validate:
        expected = embeddings(alpha.source, psi[0].target)
        if set(phi.keys()) != set(expected):
            raise ValueError("coloring is not total on the source-to-large embeddings")
    classes: dict = {}
    for emb, color in phi.items():
        classes.setdefault(color, []).append(emb)
    left_colors = [_near_colors(compose(alpha, p), classes, eps) for p in psi]
    right_colors = [_near_colors(compose(beta, p), classes, eps) for p in psi]
    m = len(psi)
    edges = frozenset(
        (i, j)
        for i in range(m)
        for j in range(m)
        if left_colors[i] & right_colors[j]
    )
    graph = BipartiteGraph(tuple(range(m)), tuple(range(m)), edges)
    size, _ = max_matching(graph)
    return size


@dataclass(frozen=True)
class RamseyOutcome:
    holds: bool
    vacuous: bool
    eps: Fraction
    k: int
    colorings_checked: int
    witnesses: tuple  # (coloring vector, family as emb(B,C) index tuple)
    counterexample: tuple | None  # failing coloring vector, or None


def ramsey_condition_check(
    a: FinMetric,
    b: FinMetric,
    c: FinMetric,
    k: int,
    eps,
    max_family: int = 4,
    family_budget: int = 2000,
    coloring_cap: int = 65536,
    sample_colorings: int | None = None,
    seed: int = 0,
) -> RamseyOutcome:
    """Check the matching condition for every coloring of emb(a, c).

    For each coloring with colors 0..k, searches multiset families psi of
    embeddings b -> c (sizes 1..max_family, at most ``family_budget``
    candidates per coloring) achieving
    min over alpha, beta in emb(a, b) of ramsey_mu >= (1-eps)*|F|.
    Returns per-coloring witnesses, or the first coloring whose budgeted
    search fails.  When emb(a, b) is empty the condition holds vacuously.
    Full enumeration requires (k+1)^|emb(a,c)| <= coloring_cap; pass
    ``sample_colorings`` to check a seeded random sample instead.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    eps = _as_fraction(eps)
    if not (0 < eps < 1):
        raise ValueError("eps must lie strictly between 0 and 1")
    emb_ab = embeddings(a, b)
    emb_ac = embeddings(a, c)
    emb_bc = embeddings(b, c)
    if not emb_ab:
        return RamseyOutcome(True, True, eps, k, 0, (), None)
    if not emb_ac:
        raise ValueError("no embeddings of the small space into the large one")

    n = len(emb_ac)
    total = (k + 1) ** n
    if sample_colorings is None:
        if total > coloring_cap:
            raise CapExceeded(
                f"coloring space {total} exceeds cap {coloring_cap}; "
                "pass sample_colorings to sample instead"
            )
        coloring_iter: Iterable = itertools.product(range(k + 1), repeat=n)
    else:
        import random as _random

        rng = _random.Random(seed)
        coloring_iter = (
            tuple(rng.randint(0, k) for _ in range(n))
            for _ in range(sample_colorings)
        )

    pair_list = [(alpha, beta) for alpha in emb_ab for beta in emb_ab]
    witnesses = []
    checked = 0
    for vector in coloring_iter:
        checked += 1
        phi = {emb: color for emb, color in zip(emb_ac, vector)}
        found = None
        spent = 0
        for size in range(1, max_family + 1):
            if found or not emb_bc:
                break
            for combo in itertools.combinations_with_replacement(
                range(len(emb_bc)), size
            ):
                spent += 1
                if spent > family_budget:
                    break
                psi = [emb_bc[i] for i in combo]
                need = (1 - eps) * size
                ok = all(
                    ramsey_mu(psi, alpha, beta, phi, eps, validate=False) >= need
                    for alpha, beta in pair_list
                )
                if ok:
                    found = combo
                    break
            if spent > family_budget:
                break
        if found is None:
            return RamseyOutcome(False, False, eps, k, checked, tuple(witnesses), vector)
        witnesses.append((vector, found))
    return RamseyOutcome(True, False, eps, k, checked, tuple(witnesses), None)
