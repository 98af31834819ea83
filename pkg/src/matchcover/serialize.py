"""JSON codecs for every persisted value.

Rationals travel as exact "p/q" strings, never floats.  Group elements are
encoded through their model's string codec, so a document embeds everything
needed to replay it.  ``canonical_dumps`` fixes key order and layout, which
makes emitted documents byte-reproducible for identical inputs and seeds.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable

from .bipartite import BipartiteGraph, MatchingWitness
from .cover import Covering, GroundSet
from .folner import Coloring, FolnerCertificate, PairResult
from .groups import GroupModel, group_from_json
from .means import ConvexCombination
from .ramsey import FinMetric, RamseyOutcome

FOLNER_CERT_SCHEMA = "folner-certificate/1"
FOLNER_EXHAUSTED_SCHEMA = "folner-exhausted/1"
RAMSEY_SCHEMA = "ramsey-check/1"


def frac_str(x) -> str:
    return str(Fraction(x))


def frac_parse(s) -> Fraction:
    if isinstance(s, float):
        raise ValueError("floats are not accepted for exact rationals")
    return Fraction(s)


def canonical_dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# -- atoms ------------------------------------------------------------------


def atom_str(atom, model: GroupModel | None) -> str:
    if model is not None:
        return model.elem_str(atom)
    if not isinstance(atom, str):
        raise ValueError(f"atoms must be strings without a group context: {atom!r}")
    return atom


def atom_parse(s: str, model: GroupModel | None):
    return model.parse_elem(s) if model is not None else s


def elems_to_json(model: GroupModel | None, elems: Iterable) -> list:
    return [atom_str(a, model) for a in elems]


def elems_from_json(model: GroupModel | None, arr: Iterable) -> list:
    return [atom_parse(s, model) for s in arr]


# -- coverings and colorings ------------------------------------------------


def covering_to_json(cov: Covering, model: GroupModel | None = None) -> dict:
    return {
        "ground": elems_to_json(model, cov.ground.atoms),
        "blocks": [elems_to_json(model, block) for block in cov.blocks],
    }


def covering_from_json(obj: dict, model: GroupModel | None = None) -> Covering:
    ground = GroundSet(elems_from_json(model, obj["ground"]))
    return Covering(ground, [elems_from_json(model, b) for b in obj["blocks"]])


def coloring_to_json(col: Coloring, model: GroupModel | None = None) -> dict:
    return {
        "ground": elems_to_json(model, col.ground.atoms),
        "colors": list(col.colors),
        "k": col.k,
    }


def coloring_from_json(obj: dict, model: GroupModel | None = None) -> Coloring:
    ground = GroundSet(elems_from_json(model, obj["ground"]))
    return Coloring(ground, tuple(int(c) for c in obj["colors"]), int(obj["k"]))


# -- graphs and witnesses ---------------------------------------------------


def graph_to_json(g: BipartiteGraph, model: GroupModel | None = None) -> dict:
    return {
        "left": elems_to_json(model, g.left),
        "right": elems_to_json(model, g.right),
        "edges": sorted([i, j] for i, j in g.edges),
    }


def graph_from_json(obj: dict, model: GroupModel | None = None) -> BipartiteGraph:
    return BipartiteGraph(
        tuple(elems_from_json(model, obj["left"])),
        tuple(elems_from_json(model, obj["right"])),
        frozenset((int(i), int(j)) for i, j in obj["edges"]),
    )


def witness_to_json(w: MatchingWitness) -> dict:
    return {"pairs": sorted([i, j] for i, j in w.pairs)}


def witness_from_json(obj: dict) -> MatchingWitness:
    return MatchingWitness(tuple(sorted((int(i), int(j)) for i, j in obj["pairs"])))


# -- means ------------------------------------------------------------------


def mean_to_json(nu: ConvexCombination) -> dict:
    return {
        "weights": {nu.group.elem_str(g): frac_str(w) for g, w in nu.items()}
    }


def mean_from_json(obj: dict, model: GroupModel) -> ConvexCombination:
    weights = {
        model.parse_elem(s): frac_parse(w) for s, w in obj["weights"].items()
    }
    return ConvexCombination(model, weights)


# -- metric spaces ----------------------------------------------------------


def finmetric_to_json(m: FinMetric) -> dict:
    return {
        "points": list(m.points),
        "dist": [[frac_str(x) for x in row] for row in m.dist],
    }


def finmetric_from_json(obj: dict) -> FinMetric:
    return FinMetric.build(
        obj["points"], [[frac_parse(x) for x in row] for row in obj["dist"]]
    )


# -- certificates -----------------------------------------------------------


def certificate_to_json(cert: FolnerCertificate) -> dict:
    model = cert.group
    return {
        "schema": FOLNER_CERT_SCHEMA,
        "group": model.describe(),
        "f": elems_to_json(model, cert.f_set),
        "e": elems_to_json(model, cert.e_set),
        "theta": frac_str(cert.theta),
        "mode": cert.mode,
        "status": cert.status,
        "cover": covering_to_json(cert.cover, model),
        "pairs": [
            {
                "g": model.elem_str(p.g),
                "h": model.elem_str(p.h),
                "mu": p.value,
                "witness": witness_to_json(p.witness),
            }
            for p in cert.pairs
        ],
    }


def certificate_from_json(obj: dict) -> FolnerCertificate:
    model = group_from_json(obj["group"])
    cover = covering_from_json(obj["cover"], model)
    pairs = tuple(
        PairResult(
            model.parse_elem(p["g"]),
            model.parse_elem(p["h"]),
            int(p["mu"]),
            witness_from_json(p["witness"]),
        )
        for p in obj["pairs"]
    )
    return FolnerCertificate(
        group=model,
        f_set=tuple(elems_from_json(model, obj["f"])),
        e_set=tuple(elems_from_json(model, obj["e"])),
        theta=frac_parse(obj["theta"]),
        mode=obj["mode"],
        cover=cover,
        pairs=pairs,
        status=obj["status"],
    )


def ramsey_outcome_to_json(
    outcome: RamseyOutcome,
    a: FinMetric,
    b: FinMetric,
    c: FinMetric,
    max_family: int,
    family_budget: int,
) -> dict:
    return {
        "schema": RAMSEY_SCHEMA,
        "a": finmetric_to_json(a),
        "b": finmetric_to_json(b),
        "c": finmetric_to_json(c),
        "k": outcome.k,
        "eps": frac_str(outcome.eps),
        "max_family": max_family,
        "family_budget": family_budget,
        "holds": outcome.holds,
        "vacuous": outcome.vacuous,
        "colorings_checked": outcome.colorings_checked,
        "witnesses": [
            {"coloring": list(vec), "family": list(combo)}
            for vec, combo in outcome.witnesses
        ],
        "counterexample": (
            list(outcome.counterexample) if outcome.counterexample else None
        ),
    }
