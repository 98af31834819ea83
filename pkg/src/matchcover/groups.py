"""Finitely generated group models with canonical element forms.

Three concrete models ship: integer lattices Z^d, free groups of finite
rank, and finite groups given by an explicit multiplication table that is
validated on load.  Elements are plain values (int tuples, freely reduced
words as signed-int tuples, table indices); the model supplies the group
law, canonical ordering, ball enumeration, and the string codecs used by
the JSON layer.
"""

from __future__ import annotations

import string
from typing import Iterable, Sequence

DEFAULT_BALL_LIMIT = 10**6

_LETTERS = string.ascii_lowercase


class GroupError(ValueError):
    """Invalid element, invalid table, or mixed-group operation."""


class GroupModel:
    """Common interface: group law, canonical order, enumeration."""

    kind: str = "abstract"

    @property
    def identity(self):
        raise NotImplementedError

    def multiply(self, g, h):
        raise NotImplementedError

    def inverse(self, g):
        raise NotImplementedError

    def validate(self, g):
        """Return the element if well formed for this model, else raise."""
        raise NotImplementedError

    def sort_key(self, g):
        raise NotImplementedError

    def generators(self, include_identity: bool = False) -> tuple:
        raise NotImplementedError

    def elem_str(self, g) -> str:
        raise NotImplementedError

    def parse_elem(self, s: str):
        raise NotImplementedError

    def describe(self) -> dict:
        raise NotImplementedError

    def canon_set(self, elems: Iterable) -> tuple:
        """Validate, deduplicate, and sort a finite set of elements."""
        unique = {self.validate(g) for g in elems}
        return tuple(sorted(unique, key=self.sort_key))

    def translate(self, g, f: Iterable) -> tuple:
        """Left translate {g*x : x in f}, canonically ordered."""
        g = self.validate(g)
        return self.canon_set(self.multiply(g, x) for x in f)

    def ball(self, radius: int, max_size: int = DEFAULT_BALL_LIMIT) -> tuple:
        """All elements of word length <= radius over the symmetric generators."""
        if radius < 0:
            raise ValueError("radius must be non-negative")
        seen = {self.identity}
        frontier = [self.identity]
        gens = self.generators()
        for _ in range(radius):
            nxt = []
            for g in frontier:
                for s in gens:
                    h = self.multiply(g, s)
                    if h not in seen:
                        seen.add(h)
                        nxt.append(h)
                        if len(seen) > max_size:
                            raise GroupError(
                                f"ball size exceeds cap {max_size}"
                            )
            frontier = nxt
        return tuple(sorted(seen, key=self.sort_key))


class IntegerLattice(GroupModel):
    """Z^d with componentwise addition; word metric is the l1 norm."""

    kind = "zd"

    def __init__(self, d: int) -> None:
        if d < 1:
            raise GroupError("dimension must be positive")
        self.d = d

    @property
    def identity(self):
        return (0,) * self.d

    def validate(self, g):
        if (
            isinstance(g, tuple)
            and len(g) == self.d
            and all(isinstance(x, int) for x in g)
        ):
            return g
        raise GroupError(f"not a Z^{self.d} element: {g!r}")

    def multiply(self, g, h):
        g, h = self.validate(g), self.validate(h)
        return tuple(a + b for a, b in zip(g, h))

    def inverse(self, g):
        g = self.validate(g)
        return tuple(-a for a in g)

    def sort_key(self, g):
        return g

    def generators(self, include_identity: bool = False) -> tuple:
        gens = []
        if include_identity:
            gens.append(self.identity)
        for i in range(self.d):
            unit = tuple(1 if j == i else 0 for j in range(self.d))
            gens.append(unit)
            gens.append(self.inverse(unit))
        return tuple(gens)

    def elem_str(self, g) -> str:
        return ",".join(str(x) for x in self.validate(g))

    def parse_elem(self, s: str):
        try:
            vec = tuple(int(part) for part in s.split(","))
        except ValueError:
            raise GroupError(f"bad Z^{self.d} element string: {s!r}") from None
        return self.validate(vec)

    def describe(self) -> dict:
        return {"kind": "zd", "d": self.d}


class FreeGroup(GroupModel):
    """Free group of finite rank; elements are freely reduced words.

    A word is a tuple of nonzero ints: i stands for the i-th generator,
    -i for its inverse.  Generators print as a, b, c, ... and inverses as
    the corresponding capitals, so the rank is capped at 26.
    """

    kind = "free"

    def __init__(self, rank: int) -> None:
        if not (1 <= rank <= 26):
            raise GroupError("rank must be between 1 and 26")
        self.rank = rank

    @property
    def identity(self):
        return ()

    def validate(self, g):
        if not isinstance(g, tuple):
            raise GroupError(f"not a free-group word: {g!r}")
        for x in g:
            if not isinstance(x, int) or x == 0 or abs(x) > self.rank:
                raise GroupError(f"bad letter {x!r} in word {g!r}")
        for a, b in zip(g, g[1:]):
            if a == -b:
                raise GroupError(f"word not freely reduced: {g!r}")
        return g

    def multiply(self, g, h):
        g, h = self.validate(g), self.validate(h)
        out = list(g)
        for x in h:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
        return tuple(out)

    def inverse(self, g):
        g = self.validate(g)
        return tuple(-x for x in reversed(g))

    def sort_key(self, g):
        return (len(g), g)

    def generators(self, include_identity: bool = False) -> tuple:
        gens = []
        if include_identity:
            gens.append(())
        for i in range(1, self.rank + 1):
            gens.append((i,))
            gens.append((-i,))
        return tuple(gens)

    def elem_str(self, g) -> str:
        g = self.validate(g)
        if not g:
            return "1"
        return "".join(
            _LETTERS[x - 1] if x > 0 else _LETTERS[-x - 1].upper() for x in g
        )

    def parse_elem(self, s: str):
        if s == "1":
            return ()
        word = []
        for ch in s:
            if ch in _LETTERS[: self.rank]:
                word.append(_LETTERS.index(ch) + 1)
            elif ch.lower() in _LETTERS[: self.rank]:
                word.append(-(_LETTERS.index(ch.lower()) + 1))
            else:
                raise GroupError(f"bad letter {ch!r} in word string {s!r}")
        return self.validate(tuple(word))

    def describe(self) -> dict:
        return {"kind": "free", "rank": self.rank}


class FiniteTableGroup(GroupModel):
    """Finite group given by a multiplication table, validated on load.

    Elements are indices into ``names``; ``table[i][j]`` is the index of
    the product of element i with element j.
    """

    kind = "table"

    def __init__(self, names: Sequence[str], table: Sequence[Sequence[int]]) -> None:
        self.names = tuple(str(n) for n in names)
        n = len(self.names)
        if n == 0:
            raise GroupError("empty element list")
        if len(set(self.names)) != n:
            raise GroupError("duplicate element names")
        if len(table) != n or any(len(row) != n for row in table):
            raise GroupError("multiplication table is not square")
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        for row in self.table:
            for x in row:
                if not (0 <= x < n):
                    raise GroupError(f"table entry {x} out of range")
        self._identity = self._find_identity()
        self._inverses = self._find_inverses()
        self._check_associativity()

    def _find_identity(self) -> int:
        n = len(self.names)
        for e in range(n):
            if all(self.table[e][x] == x and self.table[x][e] == x for x in range(n)):
                return e
        raise GroupError("table has no identity element")

    def _find_inverses(self) -> tuple:
        n = len(self.names)
        inv = []
        for x in range(n):
            candidates = [
                y
                for y in range(n)
                if self.table[x][y] == self._identity
                and self.table[y][x] == self._identity
            ]
            if not candidates:
                raise GroupError(f"element {self.names[x]!r} has no inverse")
            inv.append(candidates[0])
        return tuple(inv)

    def _check_associativity(self) -> None:
        n = len(self.names)
        t = self.table
        for a in range(n):
            for b in range(n):
                ab = t[a][b]
                for c in range(n):
                    if t[ab][c] != t[a][t[b][c]]:
                        raise GroupError(
                            "table is not associative at "
                            f"({self.names[a]},{self.names[b]},{self.names[c]})"
                        )

    @property
    def order(self) -> int:
        return len(self.names)

    @property
    def identity(self):
        return self._identity

    def elements(self) -> tuple:
        return tuple(range(self.order))

    def validate(self, g):
        if isinstance(g, int) and not isinstance(g, bool) and 0 <= g < self.order:
            return g
        raise GroupError(f"not an element index: {g!r}")

    def multiply(self, g, h):
        return self.table[self.validate(g)][self.validate(h)]

    def inverse(self, g):
        return self._inverses[self.validate(g)]

    def sort_key(self, g):
        return g

    def generators(self, include_identity: bool = False) -> tuple:
        gens = [x for x in range(self.order) if x != self._identity]
        if include_identity:
            gens.insert(0, self._identity)
        return tuple(gens)

    def elem_str(self, g) -> str:
        return self.names[self.validate(g)]

    def parse_elem(self, s: str):
        try:
            return self.names.index(s)
        except ValueError:
            raise GroupError(f"unknown element name: {s!r}") from None

    def describe(self) -> dict:
        return {
            "kind": "table",
            "elements": list(self.names),
            "mul": [list(row) for row in self.table],
        }


def cyclic_group(n: int) -> FiniteTableGroup:
    """Z/n as a table group with elements named '0', '1', ..."""
    names = [str(i) for i in range(n)]
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteTableGroup(names, table)


def symmetric_group(n: int) -> FiniteTableGroup:
    """S_n (small n) as a table group; names are one-line permutation strings."""
    if n > 5:
        raise GroupError("symmetric_group is intended for small n")
    import itertools

    perms = sorted(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    names = ["".join(str(x) for x in p) for p in perms]
    table = [
        [index[tuple(p[q[k]] for k in range(n))] for q in perms] for p in perms
    ]
    return FiniteTableGroup(names, table)


def group_from_json(obj: dict) -> GroupModel:
    kind = obj.get("kind")
    if kind == "zd":
        return IntegerLattice(int(obj["d"]))
    if kind == "free":
        return FreeGroup(int(obj["rank"]))
    if kind == "table":
        return FiniteTableGroup(obj["elements"], obj["mul"])
    raise GroupError(f"unknown group kind: {kind!r}")


class FiniteAction:
    """A finite table group acting on a finite point set.

    ``act[i][p]`` is the image of point index p under element i.  The
    identity row and the homomorphism law are checked on load.
    """

    def __init__(
        self,
        group: FiniteTableGroup,
        points: Sequence,
        act: Sequence[Sequence[int]],
    ) -> None:
        self.group = group
        self.points = tuple(points)
        npts = len(self.points)
        if len(set(self.points)) != npts or npts == 0:
            raise GroupError("points must be distinct and non-empty")
        if len(act) != group.order or any(len(row) != npts for row in act):
            raise GroupError("action table has wrong shape")
        self.table = tuple(tuple(int(x) for x in row) for row in act)
        for row in self.table:
            for x in row:
                if not (0 <= x < npts):
                    raise GroupError(f"action entry {x} out of range")
        e = group.identity
        if any(self.table[e][p] != p for p in range(npts)):
            raise GroupError("identity does not act as identity")
        for g in range(group.order):
            for h in range(group.order):
                gh = group.multiply(g, h)
                for p in range(npts):
                    if self.table[g][self.table[h][p]] != self.table[gh][p]:
                        raise GroupError("action does not respect multiplication")

    def point_index(self, p) -> int:
        try:
            return self.points.index(p)
        except ValueError:
            raise GroupError(f"unknown point: {p!r}") from None

    def act(self, g, subset: Iterable) -> tuple:
        """Image of a point subset under g, in point order."""
        g = self.group.validate(g)
        images = {self.table[g][self.point_index(p)] for p in subset}
        return tuple(self.points[i] for i in sorted(images))

    def describe(self) -> dict:
        out = self.group.describe()
        out["points"] = list(self.points)
        out["act"] = [list(row) for row in self.table]
        return out


def rotation_action(n: int) -> FiniteAction:
    """Z/n rotating n points labelled '0'..'n-1'."""
    group = cyclic_group(n)
    points = [str(i) for i in range(n)]
    act = [[(p + g) % n for p in range(n)] for g in range(n)]
    return FiniteAction(group, points, act)


def action_from_json(obj: dict) -> FiniteAction:
    group = group_from_json({k: obj[k] for k in ("kind", "elements", "mul")})
    if not isinstance(group, FiniteTableGroup):
        raise GroupError("actions require a finite table group")
    return FiniteAction(group, obj["points"], obj["act"])
