"""Exact calculus of finite coverings: refinement, joins, stars.

Blocks are canonicalized (sorted in ground order, deduplicated) so that
covering equality, refinement, and star computations reduce to plain set
algebra with no tolerance knobs.  Everything here is a pure function on
immutable values.
"""

from __future__ import annotations

from typing import Hashable, Iterable

Atom = Hashable

DEFAULT_STAR_LIMIT = 8


class GroundMismatch(ValueError):
    """Two coverings over different ground sets were combined."""


class StarLimitExceeded(ValueError):
    """A star iterate exceeded the configured bound."""


class GroundSet:
    """Ordered universe of distinct atoms.

    The construction order fixes the canonical order used for every block
    and every set output derived from this ground set, which keeps all
    downstream certificates byte-reproducible.
    """

    __slots__ = ("atoms", "_pos")

    def __init__(self, atoms: Iterable[Atom]) -> None:
        self.atoms = tuple(atoms)
        if not self.atoms:
            raise ValueError("ground set must be non-empty")
        self._pos: dict[Atom, int] = {}
        for i, atom in enumerate(self.atoms):
            if atom in self._pos:
                raise ValueError(f"duplicate atom in ground set: {atom!r}")
            self._pos[atom] = i

    def __len__(self) -> int:
        return len(self.atoms)

    def __contains__(self, atom: Atom) -> bool:
        return atom in self._pos

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GroundSet) and self.atoms == other.atoms

    def __hash__(self) -> int:
        return hash(self.atoms)

    def __repr__(self) -> str:
        return f"GroundSet({list(self.atoms)!r})"

    def position(self, atom: Atom) -> int:
        try:
            return self._pos[atom]
        except KeyError:
            raise ValueError(f"atom not in ground set: {atom!r}") from None

    def canon(self, atoms: Iterable[Atom]) -> tuple:
        """Sort a subset into canonical ground order, dropping duplicates."""
        idx = sorted({self.position(a) for a in atoms})
        return tuple(self.atoms[i] for i in idx)


class Covering:
    """A finite family of blocks whose union is the ground set.

    Duplicate blocks are silently merged; empty blocks are rejected unless
    ``allow_empty_blocks`` is set (they are never useful, the flag exists
    for robustness testing only).
    """

    __slots__ = ("ground", "blocks", "block_sets")

    def __init__(
        self,
        ground: GroundSet,
        blocks: Iterable[Iterable[Atom]],
        allow_empty_blocks: bool = False,
    ) -> None:
        canon_blocks = []
        seen = set()
        covered: set = set()
        for raw in blocks:
            block = ground.canon(raw)
            if not block and not allow_empty_blocks:
                raise ValueError("empty block not permitted")
            if block in seen:
                continue
            seen.add(block)
            canon_blocks.append(block)
            covered.update(block)
        if covered != set(ground.atoms):
            missing = [a for a in ground.atoms if a not in covered]
            raise ValueError(f"blocks do not cover the ground set; missing {missing!r}")
        canon_blocks.sort(key=lambda b: tuple(ground.position(a) for a in b))
        self.ground = ground
        self.blocks = tuple(canon_blocks)
        self.block_sets = tuple(frozenset(b) for b in self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Covering)
            and self.ground == other.ground
            and self.blocks == other.blocks
        )

    def __hash__(self) -> int:
        return hash((self.ground, self.blocks))

    def __repr__(self) -> str:
        return f"Covering({len(self.blocks)} blocks over {len(self.ground)} atoms)"

    def is_partition(self) -> bool:
        return sum(len(b) for b in self.blocks) == len(self.ground)

    def restrict(self, atoms: Iterable[Atom]) -> "Covering":
        """Covering induced on a subset: blocks are intersected, empties dropped.

        Intersecting blocks preserves every pair relation inside the subset,
        so matching numbers between subsets of ``atoms`` are unchanged.
        """
        keep = set(self.ground.canon(atoms))
        sub_ground = GroundSet(a for a in self.ground.atoms if a in keep)
        sub_blocks = []
        for block in self.blocks:
            trimmed = [a for a in block if a in keep]
            if trimmed:
                sub_blocks.append(trimmed)
        return Covering(sub_ground, sub_blocks)


def _require_same_ground(u: Covering, v: Covering) -> None:
    if u.ground != v.ground:
        raise GroundMismatch("coverings live on different ground sets")


def refines(coarse: Covering, fine: Covering) -> bool:
    """True iff every block of ``fine`` sits inside some block of ``coarse``."""
    _require_same_ground(coarse, fine)
    for small in fine.block_sets:
        if not any(small <= big for big in coarse.block_sets):
            return False
    return True


def join(u: Covering, v: Covering) -> Covering:
    """Common refinement: all pairwise intersections, empties dropped."""
    _require_same_ground(u, v)
    blocks = []
    for a in u.block_sets:
        for b in v.block_sets:
            common = a & b
            if common:
                blocks.append(common)
    return Covering(u.ground, blocks)


def star_set(s: Iterable[Atom], u: Covering) -> tuple:
    """Union of all blocks meeting ``s``, in canonical order."""
    probe = set(u.ground.canon(s))
    out: set = set()
    for block in u.block_sets:
        if block & probe:
            out.update(block)
    return u.ground.canon(out)


def star_covering(u: Covering) -> Covering:
    """Covering of block stars; each block is contained in its own star."""
    return Covering(u.ground, (star_set(block, u) for block in u.blocks))


def star_iterate(u: Covering, n: int, limit: int = DEFAULT_STAR_LIMIT) -> Covering:
    if n < 0:
        raise ValueError("star iterate count must be non-negative")
    if n > limit:
        raise StarLimitExceeded(f"star iterate {n} exceeds limit {limit}")
    out = u
    for _ in range(n):
        out = star_covering(out)
    return out


def star_refines(coarse: Covering, fine: Covering) -> bool:
    """True iff ``coarse`` is refined by the star of ``fine``."""
    _require_same_ground(coarse, fine)
    return refines(coarse, star_covering(fine))
