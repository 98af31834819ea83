"""Matching-based almost-invariance certificates on finitely generated groups.

A certificate fixes a finite candidate set F, a translate set E, a covering
of an explicit finite window, and a rational threshold theta.  It records,
for every required pair of translates, the exact matching number together
with a witness matching.  The checker recomputes everything independently;
nothing outside the window is ever consulted, and any reference escaping
the window is an error rather than a silent truncation.

Two pair modes ship side by side: ``asym`` compares F against each
translate gF, while ``sym`` compares all pairs of translates gF, hF.  The
distinction is preserved deliberately; the two conditions are recorded
next to each other and no equivalence between them is assumed.

Searches (over candidate sets, and adversarially over colorings) are
deterministic given their seed.  The search procedures themselves are
artifact machinery: balls by radius plus a boundary-move hill climb for
candidate sets, and single-atom recoloring descent for adversarial
colorings.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .bipartite import (
    covering_graph,
    max_matching,
    MatchingWitness,
    mu,
    mu_partition,
    mu_with_witness,
    validate_witness,
    WitnessError,
)
from .cover import Covering, GroundSet, star_covering
from .groups import FiniteAction, FiniteTableGroup, GroupModel, cyclic_group

MODES = ("asym", "sym")

DEFAULT_NET_CAP = 60
DEFAULT_COLORING_CAP = 2_000_000


class WindowEscape(ValueError):
    """A translate or subset referenced elements outside the window."""


def theta_threshold(theta: Fraction, size: int) -> int:
    """Exact integer test value: mu passes iff mu >= ceil(theta*size)."""
    return math.ceil(Fraction(theta) * size)


@dataclass(frozen=True)
class Coloring:
    """A total coloring of a ground set with colors 0..k."""

    ground: GroundSet
    colors: tuple
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("need at least two colors (k >= 1)")
        if len(self.colors) != len(self.ground):
            raise ValueError("color vector length does not match ground")
        for c in self.colors:
            if not (0 <= c <= self.k):
                raise ValueError(f"color {c} out of range 0..{self.k}")

    def color_of(self, atom) -> int:
        return self.colors[self.ground.position(atom)]

    def partition(self) -> Covering:
        classes: dict = {}
        for atom, c in zip(self.ground.atoms, self.colors):
            classes.setdefault(c, []).append(atom)
        return Covering(self.ground, classes.values())


@dataclass(frozen=True)
class PairResult:
    g: object
    h: object
    value: int
    witness: MatchingWitness


@dataclass(frozen=True)
class FolnerCertificate:
    group: GroupModel
    f_set: tuple
    e_set: tuple
    theta: Fraction
    mode: str
    cover: Covering
    pairs: tuple
    status: str

    @property
    def min_ratio(self) -> Fraction:
        if not self.pairs:
            return Fraction(1)
        return Fraction(min(p.value for p in self.pairs), len(self.f_set))


@dataclass(frozen=True)
class Finding:
    code: str
    message: str


@dataclass(frozen=True)
class CheckReport:
    status: str
    findings: tuple

    @property
    def ok(self) -> bool:
        return self.status == "PASS"


def required_pairs(model: GroupModel, e_set: Iterable, mode: str) -> tuple:
    """Translate pairs a certificate must cover.

    ``asym``: (identity, g) for g in E, i.e. F against each gF.
    ``sym``: all unordered pairs g < h from E; diagonal pairs are omitted
    because the identity matching makes them pass at any theta <= 1.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    e = model.canon_set(e_set)
    if mode == "asym":
        return tuple((model.identity, g) for g in e)
    return tuple(itertools.combinations(e, 2))


def _require_window(model: GroupModel, elems: Iterable, ground: GroundSet, what: str):
    missing = [g for g in elems if g not in ground]
    if missing:
        names = ", ".join(model.elem_str(g) for g in missing[:4])
        raise WindowEscape(f"{what} escapes the window at: {names}")


def _pair_translates(model: GroupModel, f_set, pair, ground) -> tuple:
    gf = model.translate(pair[0], f_set)
    hf = model.translate(pair[1], f_set)
    _require_window(model, gf, ground, f"translate {model.elem_str(pair[0])}F")
    _require_window(model, hf, ground, f"translate {model.elem_str(pair[1])}F")
    return gf, hf


def build_certificate(
    model: GroupModel,
    f_set: Iterable,
    e_set: Iterable,
    cover: Covering,
    theta,
    mode: str = "asym",
) -> FolnerCertificate:
    """Evaluate all required pairs and assemble a certificate.

    The stored covering is restricted to the union of F and the translates
    actually used; restriction preserves every pair relation inside that
    window, so matching numbers are unchanged.
    """
    theta = Fraction(theta)
    f_canon = model.canon_set(f_set)
    if not f_canon:
        raise ValueError("candidate set F must be non-empty")
    _require_window(model, f_canon, cover.ground, "candidate set F")
    e_canon = model.canon_set(e_set)
    pairs = required_pairs(model, e_canon, mode)
    window: set = set(f_canon)
    translates = []
    for pair in pairs:
        gf, hf = _pair_translates(model, f_canon, pair, cover.ground)
        translates.append((gf, hf))
        window.update(gf)
        window.update(hf)
    sub_cover = cover.restrict(window)
    need = theta_threshold(theta, len(f_canon))
    results = []
    ok = True
    for pair, (gf, hf) in zip(pairs, translates):
        value, witness = mu_with_witness(gf, hf, sub_cover)
        if value < need:
            ok = False
        results.append(PairResult(pair[0], pair[1], value, witness))
    return FolnerCertificate(
        group=model,
        f_set=f_canon,
        e_set=e_canon,
        theta=theta,
        mode=mode,
        cover=sub_cover,
        pairs=tuple(results),
        status="PASS" if ok else "FAIL",
    )


def check_certificate(cert: FolnerCertificate) -> CheckReport:
    """Recompute a certificate from scratch and compare field by field.

    Witness validation, matching-number recomputation, threshold tests,
    and pair coverage are reported as separate findings so a tampered
    certificate pinpoints what was altered.  Window escapes raise, since
    such a certificate is malformed rather than merely wrong.
    """
    model = cert.group
    findings = []
    f_size = len(cert.f_set)
    need = theta_threshold(cert.theta, f_size)
    expected = required_pairs(model, cert.e_set, cert.mode)
    stored = tuple((p.g, p.h) for p in cert.pairs)
    if stored != expected:
        findings.append(
            Finding("pairs-mismatch", f"stored pairs {stored!r} != required {expected!r}")
        )
    for pair in cert.pairs:
        gf, hf = _pair_translates(model, cert.f_set, (pair.g, pair.h), cert.cover.ground)
        graph = covering_graph(gf, hf, cert.cover)
        label = f"({model.elem_str(pair.g)},{model.elem_str(pair.h)})"
        try:
            validate_witness(graph, pair.witness)
        except WitnessError as exc:
            findings.append(Finding("witness-invalid", f"pair {label}: {exc}"))
            continue
        if len(pair.witness) != pair.value:
            findings.append(
                Finding(
                    "witness-size",
                    f"pair {label}: witness has {len(pair.witness)} pairs, "
                    f"claimed {pair.value}",
                )
            )
        value, _ = max_matching(graph)
        if value != pair.value:
            findings.append(
                Finding("value-mismatch", f"pair {label}: stored {pair.value}, recomputed {value}")
            )
        if value < need:
            findings.append(
                Finding(
                    "threshold-miss",
                    f"pair {label}: mu = {value} < {need} = ceil(theta*|F|)",
                )
            )
    all_good = not findings
    if all_good != (cert.status == "PASS"):
        findings.append(
            Finding("status-inconsistent", f"certificate marked {cert.status}")
        )
    return CheckReport("PASS" if not findings else "FAIL", tuple(findings))


def moore_gap(model_or_action, f_set: Iterable, g, a: Iterable, window: Iterable) -> int:
    """Exact value of ||F & A| - |gF & A|| inside an explicit window."""
    if isinstance(model_or_action, FiniteAction):
        action = model_or_action
        f_canon = tuple(dict.fromkeys(f_set))
        translated = action.act(g, f_canon)
        win = set(window)
        a_set = set(a)
    else:
        model = model_or_action
        f_canon = model.canon_set(f_set)
        translated = model.translate(g, f_canon)
        win = set(model.canon_set(window))
        a_set = set(model.canon_set(a))
    for label, elems in (("F", f_canon), ("gF", translated), ("A", a_set)):
        missing = [x for x in elems if x not in win]
        if missing:
            raise WindowEscape(f"{label} escapes the window")
    return abs(len(set(f_canon) & a_set) - len(set(translated) & a_set))


def cantor_check(
    action: FiniteAction, f_set: Iterable, e_set: Iterable, p: Covering, eps
) -> tuple[bool, tuple]:
    """Per-translate, per-block counting gaps for a finite action.

    Returns (ok, gaps) where gaps lists (g, block, gap) for every element
    of e_set and every block of the partition; ok is True iff every gap is
    at most eps*|F|.
    """
    eps = Fraction(eps)
    if set(p.ground.atoms) != set(action.points):
        raise ValueError("partition ground must be the action's point set")
    if not p.is_partition():
        raise ValueError("covering is not a partition")
    f_canon = tuple(dict.fromkeys(f_set))
    bound = eps * len(f_canon)
    gaps = []
    ok = True
    f_points = set(f_canon)
    for g in e_set:
        image = set(action.act(g, f_canon))
        for block in p.block_sets:
            gap = abs(len(f_points & block) - len(image & block))
            gaps.append((g, tuple(sorted(block, key=p.ground.position)), gap))
            if gap > bound:
                ok = False
    return ok, tuple(gaps)


# ---------------------------------------------------------------------------
# candidate search


@dataclass(frozen=True)
class BallsStrategy:
    """Try balls of radius 0..max_radius as candidate sets."""

    max_radius: int = 8


@dataclass(frozen=True)
class LocalSetStrategy:
    """Hill climb on the min ratio by adding/removing boundary elements."""

    seed: int = 0
    budget: int = 300
    start: tuple | None = None


@dataclass(frozen=True)
class SearchResult:
    status: str
    certificate: FolnerCertificate | None
    best_f: tuple
    best_ratio: Fraction
    evaluations: int


def _as_cover(cover_source) -> Covering:
    if isinstance(cover_source, Coloring):
        return cover_source.partition()
    if isinstance(cover_source, Covering):
        return cover_source
    raise TypeError("cover_source must be a Covering or Coloring")


def _min_ratio(model, f_canon, pairs, cover, fast_partition) -> Fraction:
    _require_window(model, f_canon, cover.ground, "candidate set F")
    values = []
    for pair in pairs:
        gf, hf = _pair_translates(model, f_canon, pair, cover.ground)
        if fast_partition:
            values.append(mu_partition(gf, hf, cover))
        else:
            values.append(mu(gf, hf, cover))
    if not values:
        return Fraction(1)
    return Fraction(min(values), len(f_canon))


def folner_search(
    model: GroupModel,
    e_set: Iterable,
    cover_source,
    theta,
    mode: str = "asym",
    strategy=None,
) -> SearchResult:
    """Search for a candidate set meeting theta against every required pair.

    Returns a PASS result with a full certificate, or EXHAUSTED carrying the
    best candidate found and its exact min ratio.  Candidates whose
    translates would leave the covering's ground raise WindowEscape for the
    ball strategy (the caller sized the window) and are skipped as invalid
    moves by the local strategy.
    """
    theta = Fraction(theta)
    if not (0 <= theta <= 1):
        raise ValueError("theta must lie in [0, 1]")
    strategy = strategy if strategy is not None else BallsStrategy()
    cover = _as_cover(cover_source)
    fast = cover.is_partition()
    e_canon = model.canon_set(e_set)
    pairs = required_pairs(model, e_canon, mode)
    evaluations = 0
    best_f: tuple = ()
    best_ratio = Fraction(-1)

    def consider(f_canon) -> Fraction:
        nonlocal evaluations, best_f, best_ratio
        evaluations += 1
        ratio = _min_ratio(model, f_canon, pairs, cover, fast)
        key = tuple(model.sort_key(x) for x in f_canon)
        best_key = tuple(model.sort_key(x) for x in best_f)
        if ratio > best_ratio or (ratio == best_ratio and key < best_key):
            best_f, best_ratio = f_canon, ratio
        return ratio

    def passed(f_canon, ratio) -> bool:
        return ratio * len(f_canon) >= theta_threshold(theta, len(f_canon))

    if isinstance(strategy, BallsStrategy):
        for radius in range(strategy.max_radius + 1):
            f_canon = model.ball(radius)
            ratio = consider(f_canon)
            if passed(f_canon, ratio):
                cert = build_certificate(model, f_canon, e_canon, cover, theta, mode)
                return SearchResult("PASS", cert, f_canon, ratio, evaluations)
        return SearchResult("EXHAUSTED", None, best_f, best_ratio, evaluations)

    if isinstance(strategy, LocalSetStrategy):
        rng = random.Random(strategy.seed)
        gens = model.generators()

        def valid(f_canon) -> bool:
            if not f_canon or any(x not in cover.ground for x in f_canon):
                return False
            try:
                for pair in pairs:
                    _pair_translates(model, f_canon, pair, cover.ground)
            except WindowEscape:
                return False
            return True

        def random_start() -> tuple:
            pool = [x for x in model.ball(2) if x in cover.ground]
            rng.shuffle(pool)
            for size in range(min(4, len(pool)), 0, -1):
                cand = model.canon_set(pool[:size])
                if valid(cand):
                    return cand
            return model.canon_set([model.identity])

        current = model.canon_set(strategy.start) if strategy.start else None
        if current is None or not valid(current):
            start = model.canon_set([model.identity])
            current = start if valid(start) else random_start()
        if not valid(current):
            raise WindowEscape("no valid starting candidate inside the window")
        current_ratio = consider(current)
        if passed(current, current_ratio):
            cert = build_certificate(model, current, e_canon, cover, theta, mode)
            return SearchResult("PASS", cert, current, current_ratio, evaluations)
        while evaluations < strategy.budget:
            moves = []
            fset = set(current)
            for x in current:
                for s in gens:
                    y = model.multiply(x, s)
                    if y not in fset and y in cover.ground:
                        moves.append(model.canon_set(fset | {y}))
            if len(current) > 1:
                for x in current:
                    moves.append(model.canon_set(fset - {x}))
            seen = set()
            scored = []
            for cand in moves:
                if cand in seen or not valid(cand):
                    continue
                seen.add(cand)
                ratio = consider(cand)
                if passed(cand, ratio):
                    cert = build_certificate(model, cand, e_canon, cover, theta, mode)
                    return SearchResult("PASS", cert, cand, ratio, evaluations)
                scored.append((ratio, tuple(model.sort_key(v) for v in cand), cand))
                if evaluations >= strategy.budget:
                    break
            improving = [s for s in scored if s[0] > current_ratio]
            if improving:
                improving.sort(key=lambda s: (-s[0], s[1]))
                _, _, current = improving[0]
                current_ratio = improving[0][0]
            else:
                current = random_start()
                current_ratio = consider(current)
                if passed(current, current_ratio):
                    cert = build_certificate(
                        model, current, e_canon, cover, theta, mode
                    )
                    return SearchResult("PASS", cert, current, current_ratio, evaluations)
        return SearchResult("EXHAUSTED", None, best_f, best_ratio, evaluations)

    raise TypeError(f"unknown strategy: {strategy!r}")


# ---------------------------------------------------------------------------
# adversarial coloring search


@dataclass(frozen=True)
class ExhaustiveColorings:
    cap: int = DEFAULT_COLORING_CAP


@dataclass(frozen=True)
class LocalColorings:
    seed: int = 0
    budget: int = 2000
    plateau: int = 20


def _adversary_window(model, f_canon, pairs) -> GroundSet:
    window: set = set(f_canon)
    for g, h in pairs:
        window.update(model.translate(g, f_canon))
        window.update(model.translate(h, f_canon))
    return GroundSet(sorted(window, key=model.sort_key))


def adversary_coloring(
    model: GroupModel,
    f_set: Iterable,
    e_set: Iterable,
    k: int,
    mode: str = "asym",
    strategy=None,
) -> tuple[Coloring, Fraction]:
    """Coloring of the window minimizing the min matching ratio for F.

    The coloring plays against a fixed candidate set: among colorings with
    colors 0..k of the window spanned by F and its required translates, we
    minimize min over required pairs of mu(gF, hF, partition)/|F|.  The
    reported ratio is recomputed exactly through the general matcher, not
    the partition shortcut used during the search.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    strategy = strategy if strategy is not None else LocalColorings()
    f_canon = model.canon_set(f_set)
    if not f_canon:
        raise ValueError("candidate set F must be non-empty")
    pairs = required_pairs(model, model.canon_set(e_set), mode)
    ground = _adversary_window(model, f_canon, pairs)
    n = len(ground)
    f_size = len(f_canon)

    pair_indices = []
    for g, h in pairs:
        gf = model.translate(g, f_canon)
        hf = model.translate(h, f_canon)
        pair_indices.append(
            (
                tuple(ground.position(x) for x in gf),
                tuple(ground.position(x) for x in hf),
            )
        )

    def objective(colors) -> Fraction:
        worst = None
        for left_idx, right_idx in pair_indices:
            counts_l = [0] * (k + 1)
            counts_r = [0] * (k + 1)
            for i in left_idx:
                counts_l[colors[i]] += 1
            for j in right_idx:
                counts_r[colors[j]] += 1
            value = sum(min(a, b) for a, b in zip(counts_l, counts_r))
            if worst is None or value < worst:
                worst = value
        if worst is None:
            worst = f_size
        return Fraction(worst, f_size)

    best_vec: tuple | None = None
    best_obj: Fraction | None = None

    def track(vec, obj) -> None:
        nonlocal best_vec, best_obj
        vec = tuple(vec)
        if best_obj is None or obj < best_obj or (obj == best_obj and vec < best_vec):
            best_vec, best_obj = vec, obj

    if isinstance(strategy, ExhaustiveColorings):
        total = (k + 1) ** n
        if total > strategy.cap:
            raise ValueError(
                f"exhaustive coloring space {total} exceeds cap {strategy.cap}"
            )
        for vec in itertools.product(range(k + 1), repeat=n):
            track(vec, objective(vec))
    elif isinstance(strategy, LocalColorings):
        rng = random.Random(strategy.seed)
        evaluations = 0
        while evaluations < strategy.budget:
            current = [rng.randint(0, k) for _ in range(n)]
            current_obj = objective(current)
            evaluations += 1
            track(current, current_obj)
            plateau_left = strategy.plateau
            while evaluations < strategy.budget:
                move_best = None
                for i in range(n):
                    old = current[i]
                    for c in range(k + 1):
                        if c == old:
                            continue
                        current[i] = c
                        obj = objective(current)
                        evaluations += 1
                        track(current, obj)
                        cand = (obj, i, c)
                        if move_best is None or cand < move_best:
                            move_best = cand
                        if evaluations >= strategy.budget:
                            break
                    current[i] = old
                    if evaluations >= strategy.budget:
                        break
                if move_best is None:
                    break
                obj, i, c = move_best
                if obj < current_obj:
                    current[i] = c
                    current_obj = obj
                    plateau_left = strategy.plateau
                elif obj == current_obj and plateau_left > 0:
                    current[i] = c
                    plateau_left -= 1
                else:
                    break
    else:
        raise TypeError(f"unknown strategy: {strategy!r}")

    coloring = Coloring(ground, best_vec, k)
    partition = coloring.partition()
    exact = None
    for g, h in pairs:
        gf = model.translate(g, f_canon)
        hf = model.translate(h, f_canon)
        value = mu(gf, hf, partition)
        if exact is None or value < exact:
            exact = value
    ratio = Fraction(f_size if exact is None else exact, f_size)
    return coloring, ratio


# ---------------------------------------------------------------------------
# threshold amplification harness


def theta_boost_check(
    theta0, trials: int = 100, seed: int = 0, max_order: int = 12
) -> dict:
    """Randomized harness for the 2*theta0 - 1 amplification step.

    Generates random finite cyclic instances until ``trials`` of them
    satisfy both hypotheses mu(F, gF, V) >= theta0*|F| and
    mu(F, hF, V) >= theta0*|F| exactly, then asserts the symmetric pair
    bound mu(gF, hF, V*) >= (2*theta0 - 1)*|F| in the star covering.
    Returns a report with any violations (expected: none).
    """
    theta0 = Fraction(theta0)
    if not (Fraction(1, 2) < theta0 <= 1):
        raise ValueError("theta0 must lie in (1/2, 1]")
    theta1 = 2 * theta0 - 1
    rng = random.Random(seed)
    groups = {n: cyclic_group(n) for n in range(6, max_order + 1)}
    checked = 0
    attempts = 0
    violations = []
    while checked < trials:
        attempts += 1
        if attempts > 1000 * trials:
            raise RuntimeError("instance generator failed to satisfy hypotheses")
        n = rng.randint(6, max_order)
        model = groups[n]
        ground = GroundSet(range(n))
        f_size = rng.randint(2, n - 1)
        f_set = model.canon_set(rng.sample(range(n), f_size))
        g = rng.randrange(n)
        h = rng.randrange(n)
        style = rng.random()
        if style < 0.3:
            cover = Covering(ground, [range(n)])
        else:
            parts = rng.randint(2, 3)
            assignment = [rng.randrange(parts) for _ in range(n)]
            blocks = [
                [x for x in range(n) if assignment[x] == b] for b in range(parts)
            ]
            blocks = [b for b in blocks if b]
            grown = []
            for b in blocks:
                extra = rng.sample(range(n), rng.randint(0, n // 2))
                grown.append(sorted(set(b) | set(extra)))
            cover = Covering(ground, grown)
        gf = model.translate(g, f_set)
        hf = model.translate(h, f_set)
        hyp_g = Fraction(mu(f_set, gf, cover), f_size) >= theta0
        hyp_h = Fraction(mu(f_set, hf, cover), f_size) >= theta0
        if not (hyp_g and hyp_h):
            continue
        checked += 1
        star = star_covering(cover)
        conclusion = Fraction(mu(gf, hf, star), f_size)
        if conclusion < theta1:
            violations.append(
                {
                    "order": n,
                    "f": f_set,
                    "g": g,
                    "h": h,
                    "blocks": cover.blocks,
                    "ratio": conclusion,
                }
            )
    return {
        "theta0": theta0,
        "theta1": theta1,
        "checked": checked,
        "attempts": attempts,
        "violations": violations,
    }


# ---------------------------------------------------------------------------
# perfect nets on finite groups


@dataclass(frozen=True)
class PerfectNet:
    v_set: tuple
    f_set: tuple
    cover: Covering
    matchings: tuple  # (g, MatchingWitness) per group element
    minimal: bool


def _exact_min_cover(universe_size: int, set_masks: Sequence[int]) -> tuple:
    """Minimum subfamily covering everything, by iterative deepening.

    Branches on the lowest uncovered point, trying candidate sets in index
    order; the first solution at the minimal depth is returned, which fixes
    a deterministic choice.
    """
    full = (1 << universe_size) - 1
    covers_point: list = [[] for _ in range(universe_size)]
    for idx, mask in enumerate(set_masks):
        m = mask
        while m:
            low = m & -m
            covers_point[low.bit_length() - 1].append(idx)
            m ^= low
    for point, options in enumerate(covers_point):
        if not options:
            raise ValueError(f"point {point} not coverable")
    max_size = max(mask.bit_count() for mask in set_masks)

    def dfs(uncovered: int, budget: int, chosen: list):
        if uncovered == 0:
            return list(chosen)
        if budget * max_size < uncovered.bit_count():
            return None
        point = (uncovered & -uncovered).bit_length() - 1
        for idx in covers_point[point]:
            chosen.append(idx)
            found = dfs(uncovered & ~set_masks[idx], budget - 1, chosen)
            if found is not None:
                return found
            chosen.pop()
        return None

    lower = math.ceil(universe_size / max_size)
    for depth in range(lower, universe_size + 1):
        found = dfs(full, depth, [])
        if found is not None:
            return tuple(sorted(found))
    raise RuntimeError("set cover search failed")  # unreachable: singletons cover


def _greedy_cover(universe_size: int, set_masks: Sequence[int]) -> tuple:
    uncovered = (1 << universe_size) - 1
    chosen = []
    while uncovered:
        best_idx = None
        best_gain = -1
        for idx, mask in enumerate(set_masks):
            gain = (mask & uncovered).bit_count()
            if gain > best_gain:
                best_gain, best_idx = gain, idx
        if best_gain <= 0:
            raise ValueError("universe not coverable")
        chosen.append(best_idx)
        uncovered &= ~set_masks[best_idx]
    return tuple(sorted(chosen))


def perfect_net(
    model: FiniteTableGroup, u_set: Iterable, cap: int = DEFAULT_NET_CAP
) -> PerfectNet:
    """Conjugation-stable core, minimal net, and all-translate perfect matchings.

    Given a subset U containing the identity of a finite group G, computes
    V as the intersection of all conjugates of U, a minimum-cardinality F
    with V*F = G (exact branch and bound up to ``cap`` elements, greedy
    beyond with ``minimal=False``), and for every g in G a perfect matching
    between F and gF in the covering by right translates of U^{-1}U.
    """
    n = model.order
    u_canon = model.canon_set(u_set)
    if model.identity not in u_canon:
        raise ValueError("U must contain the identity")
    u_elems = set(u_canon)
    v_elems = None
    for g in range(n):
        ginv = model.inverse(g)
        conj = {model.multiply(model.multiply(ginv, x), g) for x in u_elems}
        v_elems = conj if v_elems is None else (v_elems & conj)
    v_canon = model.canon_set(v_elems)

    set_masks = []
    for f in range(n):
        mask = 0
        for v in v_canon:
            mask |= 1 << model.multiply(v, f)
        set_masks.append(mask)
    if n <= cap:
        f_idx = _exact_min_cover(n, set_masks)
        minimal = True
    else:
        f_idx = _greedy_cover(n, set_masks)
        minimal = False
    f_canon = model.canon_set(f_idx)

    uinv_u = {
        model.multiply(model.inverse(x), y) for x in u_elems for y in u_elems
    }
    ground = GroundSet(range(n))
    blocks = []
    for x in range(n):
        blocks.append(sorted(model.multiply(w, x) for w in uinv_u))
    cover = Covering(ground, blocks)

    matchings = []
    for g in range(n):
        gf = model.translate(g, f_canon)
        size, witness = mu_with_witness(f_canon, gf, cover)
        if size != len(f_canon):
            raise RuntimeError(
                f"imperfect matching for translate {model.elem_str(g)}"
            )
        matchings.append((g, witness))
    return PerfectNet(v_canon, f_canon, cover, tuple(matchings), minimal)


def monochromatic_translate(
    model: GroupModel, window: Iterable, cover: Covering, e_set: Iterable
) -> tuple | None:
    """First right translate Eg of E fitting inside a single block.

    Scans g over the window in canonical order, skipping translates that
    leave the window, and returns (g, block) for the first block containing
    the whole translate; None reports exhaustive failure over the window.
    """
    win = model.canon_set(window)
    win_set = set(win)
    e_canon = model.canon_set(e_set)
    for g in win:
        eg = model.canon_set(model.multiply(x, g) for x in e_canon)
        if any(x not in win_set for x in eg):
            continue
        eg_set = set(eg)
        for block, block_set in zip(cover.blocks, cover.block_sets):
            if eg_set <= block_set:
                return g, block
    return None


def translate_witness(
    model: GroupModel,
    shift,
    left: Sequence,
    right: Sequence,
    witness: MatchingWitness,
) -> MatchingWitness:
    """Reindex a matching between ``left`` and ``right`` after translating both by ``shift``.

    The translated witness refers to the canonical orders of shift*left and
    shift*right; whether it remains a matching with respect to a given
    covering depends on that covering and is for the caller to validate.
    """
    new_left = model.translate(shift, left)
    new_right = model.translate(shift, right)
    left_pos = {a: i for i, a in enumerate(new_left)}
    right_pos = {a: j for j, a in enumerate(new_right)}
    pairs = []
    for li, ri in witness.pairs:
        a = model.multiply(shift, left[li])
        b = model.multiply(shift, right[ri])
        pairs.append((left_pos[a], right_pos[b]))
    return MatchingWitness(tuple(sorted(pairs)))
