"""Command-line front end: JSON persistence, certificate replay, CSV sweeps.

Exit codes: 0 for PASS/found/success, 1 for EXHAUSTED/not-found/failed
verification, 2 for invalid input of any kind.  Output files are written
atomically (temp file in the same directory, then rename).  Every emitted
certificate embeds a run manifest with content digests of its input files;
set SOURCE_DATE_EPOCH for byte-reproducible documents across runs.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import os
import re
import sys
import tempfile
import time
from fractions import Fraction

from . import __version__
from .bipartite import (
    covering_graph,
    hall_deficiency,
    max_matching,
    mu as mu_value,
    mu_partition,
    mu_with_witness,
)
from .cover import Covering, GroundSet, join, refines, star_iterate, star_refines
from .folner import (
    BallsStrategy,
    Coloring,
    ExhaustiveColorings,
    LocalColorings,
    LocalSetStrategy,
    build_certificate,
    check_certificate,
    folner_search,
    adversary_coloring,
    monochromatic_translate,
    perfect_net,
    required_pairs,
    theta_threshold,
)
from .groups import FreeGroup, GroupModel, IntegerLattice, group_from_json
from .means import convolve, rationalize
from .ramsey import ramsey_condition_check, ramsey_mu, embeddings
from . import serialize as ser


def _now_iso() -> str:
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    t = int(epoch) if epoch else int(time.time())
    return time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime(t))


def _digest(path: str) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def _manifest(argv, input_paths, seed, outcome) -> dict:
    return {
        "argv": list(argv),
        "inputs": {p: _digest(p) for p in input_paths if p},
        "seed": seed,
        "version": __version__,
        "timestamp": _now_iso(),
        "outcome": outcome,
    }


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _load_json(path: str):
    with open(path) as fh:
        return json.load(fh)


def _status_text(word: str) -> str:
    if os.environ.get("NO_COLOR") or not sys.stdout.isatty():
        return word
    color = "32" if word in ("PASS", "FOUND", "OK") else "31"
    return f"\x1b[{color}m{word}\x1b[0m"


def _load_group(spec: str) -> GroupModel:
    m = re.fullmatch(r"zd(\d+)", spec)
    if m:
        return IntegerLattice(int(m.group(1)))
    m = re.fullmatch(r"free(\d+)", spec)
    if m:
        return FreeGroup(int(m.group(1)))
    return group_from_json(_load_json(spec))


def _group_input_path(spec: str) -> str | None:
    if re.fullmatch(r"zd\d+|free\d+", spec):
        return None
    return spec


def _parse_elems(model: GroupModel, text: str | None, path: str | None) -> tuple:
    if (text is None) == (path is None):
        raise ValueError("pass exactly one of the inline list or the file form")
    if path is not None:
        return tuple(ser.elems_from_json(model, _load_json(path)))
    return tuple(model.parse_elem(part.strip()) for part in text.split(";") if part.strip())


def builtin_coloring(model: GroupModel, name: str, window) -> Coloring:
    """Window colorings available by name: trivial, parity, first-letter."""
    ground = GroundSet(sorted(set(window), key=model.sort_key))
    if name == "trivial":
        return Coloring(ground, tuple(0 for _ in ground.atoms), 1)
    if name == "parity":
        if isinstance(model, IntegerLattice):
            colors = tuple(sum(v) % 2 for v in ground.atoms)
        elif isinstance(model, FreeGroup):
            colors = tuple(len(w) % 2 for w in ground.atoms)
        else:
            colors = tuple(int(g) % 2 for g in ground.atoms)
        return Coloring(ground, colors, 1)
    if name == "first-letter":
        if not isinstance(model, FreeGroup):
            raise ValueError("first-letter coloring needs a free group")
        k = 2 * model.rank

        def code(word):
            if not word:
                return 0
            x = word[0]
            return 2 * x - 1 if x > 0 else -2 * x

        return Coloring(ground, tuple(code(w) for w in ground.atoms), k)
    raise ValueError(f"unknown builtin coloring: {name!r}")


def _cover_for_search(model, args, window) -> tuple:
    """Resolve --cover/--coloring into a Covering plus the input path used."""
    if args.cover:
        return ser.covering_from_json(_load_json(args.cover), model), args.cover
    if args.coloring:
        if os.path.exists(args.coloring):
            col = ser.coloring_from_json(_load_json(args.coloring), model)
            return col.partition(), args.coloring
        return builtin_coloring(model, args.coloring, window).partition(), None
    raise ValueError("one of --cover or --coloring is required")


def _search_window(model, e_set, strategy) -> tuple:
    if isinstance(strategy, BallsStrategy):
        base = model.ball(strategy.max_radius)
    else:
        base = model.ball(4)  # roaming room for local moves
    window = set(base)
    for g in e_set:
        window.update(model.translate(g, base))
    return tuple(sorted(window, key=model.sort_key))


def _emit(doc_or_text, args, default_print=True) -> None:
    text = doc_or_text if isinstance(doc_or_text, str) else ser.canonical_dumps(doc_or_text)
    if getattr(args, "out", None):
        _atomic_write(args.out, text)
    elif default_print:
        sys.stdout.write(text)


# -- subcommand handlers ------------------------------------------------------


def _cmd_cover(args, argv) -> int:
    if args.action == "refines":
        coarse = ser.covering_from_json(_load_json(args.coarse))
        fine = ser.covering_from_json(_load_json(args.fine))
        result = refines(coarse, fine)
        if args.json:
            _emit({"refines": result}, args)
        else:
            print("refines" if result else "does not refine")
        return 0
    if args.action == "star-refines":
        coarse = ser.covering_from_json(_load_json(args.coarse))
        fine = ser.covering_from_json(_load_json(args.fine))
        result = star_refines(coarse, fine)
        if args.json:
            _emit({"star_refines": result}, args)
        else:
            print("star-refines" if result else "does not star-refine")
        return 0
    if args.action == "join":
        u = ser.covering_from_json(_load_json(args.u))
        v = ser.covering_from_json(_load_json(args.v))
        _emit(ser.covering_to_json(join(u, v)), args)
        return 0
    if args.action == "star":
        u = ser.covering_from_json(_load_json(args.u))
        _emit(ser.covering_to_json(star_iterate(u, args.n)), args)
        return 0
    raise ValueError(f"unknown cover action {args.action!r}")


def _cmd_mu(args, argv) -> int:
    cover = ser.covering_from_json(_load_json(args.cover))
    left = ser.elems_from_json(None, _load_json(args.left))
    right = ser.elems_from_json(None, _load_json(args.right))
    value, witness = mu_with_witness(left, right, cover)
    graph = covering_graph(left, right, cover)
    doc = {
        "mu": value,
        "left": list(graph.left),
        "right": list(graph.right),
        "witness": ser.witness_to_json(witness),
    }
    if args.json:
        _emit(doc, args)
    else:
        print(f"mu = {value}")
        print(ser.canonical_dumps(ser.witness_to_json(witness)), end="")
    return 0


def _cmd_match(args, argv) -> int:
    graph = ser.graph_from_json(_load_json(args.graph))
    size, witness = max_matching(graph)
    doc = {"size": size, "witness": ser.witness_to_json(witness)}
    if args.deficiency:
        deficiency, subset = hall_deficiency(graph)
        doc["deficiency"] = deficiency
        doc["deficiency_witness"] = list(subset)
    if args.json:
        _emit(doc, args)
    else:
        print(f"maximum matching size = {size}")
        if args.deficiency:
            print(f"hall deficiency = {doc['deficiency']} at S = {doc['deficiency_witness']}")
    return 0


def _cmd_folner_search(args, argv) -> int:
    model = _load_group(args.group)
    e_set = _parse_elems(model, args.e, args.e_file)
    theta = ser.frac_parse(args.theta)
    if args.strategy == "balls":
        strategy = BallsStrategy(args.max_radius)
    else:
        strategy = LocalSetStrategy(seed=args.seed, budget=args.budget)
    window = _search_window(model, e_set, strategy)
    cover, cover_path = _cover_for_search(model, args, window)
    result = folner_search(model, e_set, cover, theta, mode=args.mode, strategy=strategy)
    inputs = [p for p in (_group_input_path(args.group), cover_path, args.e_file) if p]
    outcome = 0 if result.status == "PASS" else 1
    if result.status == "PASS":
        doc = ser.certificate_to_json(result.certificate)
    else:
        best_cert = build_certificate(model, result.best_f, e_set, cover, theta, args.mode)
        doc = ser.certificate_to_json(best_cert)
        doc["schema"] = ser.FOLNER_EXHAUSTED_SCHEMA
        doc["best_ratio"] = ser.frac_str(result.best_ratio)
        doc["evaluations"] = result.evaluations
    doc["manifest"] = _manifest(argv, inputs, args.seed, outcome)
    _emit(doc, args)
    label = _status_text("PASS" if outcome == 0 else "EXHAUSTED")
    print(
        f"{label}: |F| = {len(result.best_f)}, min ratio = {result.best_ratio}"
        f" ({result.evaluations} candidates)",
        file=sys.stderr,
    )
    return outcome


def _verify_certificate_doc(doc) -> int:
    cert = ser.certificate_from_json(doc)
    report = check_certificate(cert)
    schema = doc.get("schema")
    if schema == ser.FOLNER_CERT_SCHEMA:
        ok = report.ok and cert.status == "PASS"
    else:
        # exhausted reports store FAIL pair data; values and witnesses must
        # replay exactly, only threshold misses are expected
        ok = cert.status == "FAIL" and all(
            f.code == "threshold-miss" for f in report.findings
        )
        if "best_ratio" in doc and ser.frac_parse(doc["best_ratio"]) != cert.min_ratio:
            print(
                f"best-ratio-mismatch: stored {doc['best_ratio']}, "
                f"recomputed {cert.min_ratio}",
                file=sys.stderr,
            )
            ok = False
    for finding in report.findings:
        print(f"{finding.code}: {finding.message}", file=sys.stderr)
    print(_status_text("OK" if ok else "FAIL"))
    return 0 if ok else 1


def _verify_ramsey_doc(doc) -> int:
    a = ser.finmetric_from_json(doc["a"])
    b = ser.finmetric_from_json(doc["b"])
    c = ser.finmetric_from_json(doc["c"])
    eps = ser.frac_parse(doc["eps"])
    k = int(doc["k"])
    emb_ab = embeddings(a, b)
    emb_ac = embeddings(a, c)
    emb_bc = embeddings(b, c)
    if doc["vacuous"]:
        ok = doc["holds"] and not emb_ab
    elif doc["holds"]:
        ok = True
        for item in doc["witnesses"]:
            vector = item["coloring"]
            phi = {emb: col for emb, col in zip(emb_ac, vector)}
            psi = [emb_bc[i] for i in item["family"]]
            need = (1 - eps) * len(psi)
            for alpha in emb_ab:
                for beta in emb_ab:
                    if ramsey_mu(psi, alpha, beta, phi, eps, validate=False) < need:
                        ok = False
                        print(
                            f"witness fails for coloring {vector}", file=sys.stderr
                        )
    else:
        outcome = ramsey_condition_check(
            a,
            b,
            c,
            k,
            eps,
            max_family=int(doc["max_family"]),
            family_budget=int(doc["family_budget"]),
        )
        ok = not outcome.holds
    print(_status_text("OK" if ok else "FAIL"))
    return 0 if ok else 1


def _cmd_verify(args, argv) -> int:
    doc = _load_json(args.path)
    schema = doc.get("schema")
    if schema in (ser.FOLNER_CERT_SCHEMA, ser.FOLNER_EXHAUSTED_SCHEMA):
        return _verify_certificate_doc(doc)
    if schema == ser.RAMSEY_SCHEMA:
        return _verify_ramsey_doc(doc)
    raise ValueError(f"unknown document schema: {schema!r}")


def _cmd_folner_adversary(args, argv) -> int:
    model = _load_group(args.group)
    f_set = _parse_elems(model, args.f, args.f_file)
    e_set = _parse_elems(model, args.e, args.e_file)
    if args.strategy == "exhaustive":
        strategy = ExhaustiveColorings()
    else:
        strategy = LocalColorings(seed=args.seed, budget=args.budget, plateau=args.plateau)
    coloring, ratio = adversary_coloring(
        model, f_set, e_set, args.colors, mode=args.mode, strategy=strategy
    )
    doc = {
        "coloring": ser.coloring_to_json(coloring, model),
        "min_ratio": ser.frac_str(ratio),
    }
    if args.json or args.out:
        _emit(doc, args)
    if not args.json:
        print(f"worst coloring found: min ratio = {ratio}")
    return 0


def _cmd_folner_net(args, argv) -> int:
    model = _load_group(args.group)
    if not hasattr(model, "order"):
        raise ValueError("perfect nets need a finite table group")
    u_set = _parse_elems(model, args.u, args.u_file)
    net = perfect_net(model, u_set)
    doc = {
        "v": ser.elems_to_json(model, net.v_set),
        "f": ser.elems_to_json(model, net.f_set),
        "minimal": net.minimal,
        "matchings": [
            {"g": model.elem_str(g), "witness": ser.witness_to_json(w)}
            for g, w in net.matchings
        ],
    }
    if args.json or args.out:
        _emit(doc, args)
    if not args.json:
        print(
            f"V = {{{', '.join(ser.elems_to_json(model, net.v_set))}}}, "
            f"|F| = {len(net.f_set)}, all {len(net.matchings)} translates perfect"
        )
    return 0


def _cmd_folner_mono(args, argv) -> int:
    model = _load_group(args.group)
    window = tuple(ser.elems_from_json(model, _load_json(args.window)))
    cover = ser.covering_from_json(_load_json(args.cover), model)
    e_set = _parse_elems(model, args.e, args.e_file)
    found = monochromatic_translate(model, window, cover, e_set)
    if found is None:
        print(_status_text("NOT-FOUND"))
        return 1
    g, block = found
    doc = {
        "g": model.elem_str(g),
        "block": ser.elems_to_json(model, block),
    }
    if args.json or args.out:
        _emit(doc, args)
    if not args.json:
        print(f"{_status_text('FOUND')}: g = {model.elem_str(g)}")
    return 0


def _cmd_means(args, argv) -> int:
    if args.action == "convolve":
        model = _load_group(args.group)
        a = ser.mean_from_json(_load_json(args.a), model)
        b = ser.mean_from_json(_load_json(args.b), model)
        _emit(ser.mean_to_json(convolve(a, b)), args)
        return 0
    if args.action == "rationalize":
        obj = _load_json(args.alpha)
        alpha = {k: ser.frac_parse(v) for k, v in obj["weights"].items()}
        beta, n, gamma = rationalize(alpha, ser.frac_parse(args.theta))
        doc = {
            "n": n,
            "beta": {k: ser.frac_str(v) for k, v in beta.items()},
            "gamma": dict(gamma),
        }
        _emit(doc, args)
        return 0
    raise ValueError(f"unknown means action {args.action!r}")


def _cmd_ramsey(args, argv) -> int:
    a = ser.finmetric_from_json(_load_json(args.a))
    b = ser.finmetric_from_json(_load_json(args.b))
    c = ser.finmetric_from_json(_load_json(args.c))
    eps = ser.frac_parse(args.eps)
    outcome = ramsey_condition_check(
        a,
        b,
        c,
        args.colors,
        eps,
        max_family=args.max_family,
        family_budget=args.budget,
        seed=args.seed,
    )
    doc = ser.ramsey_outcome_to_json(outcome, a, b, c, args.max_family, args.budget)
    doc["manifest"] = _manifest(argv, [args.a, args.b, args.c], args.seed, 0 if outcome.holds else 1)
    _emit(doc, args)
    label = "HOLDS" if outcome.holds else "FAILS"
    print(
        f"{_status_text('PASS' if outcome.holds else 'EXHAUSTED')}: condition {label} "
        f"over {outcome.colorings_checked} colorings",
        file=sys.stderr,
    )
    return 0 if outcome.holds else 1


def _parse_grid(spec: str) -> list:
    parts = spec.split(":")
    if len(parts) != 3:
        raise ValueError("theta grid must look like start:stop:step")
    start, stop, step = (ser.frac_parse(p) for p in parts)
    if step <= 0:
        raise ValueError("grid step must be positive")
    grid = []
    t = start
    while t <= stop:
        grid.append(t)
        t += step
    return grid


def _cmd_sweep(args, argv) -> int:
    model = _load_group(args.group)
    if args.e or args.e_file:
        e_set = _parse_elems(model, args.e, args.e_file)
    else:
        e_set = model.generators()
    grid = _parse_grid(args.theta_grid)
    window = _search_window(model, e_set, BallsStrategy(args.max_radius))
    if args.cover or args.coloring:
        cover, _ = _cover_for_search(model, args, window)
    else:
        cover = builtin_coloring(model, "parity", window).partition()
    pairs = required_pairs(model, e_set, args.mode)
    per_radius = []
    for radius in range(args.max_radius + 1):
        f_set = model.ball(radius)
        values = []
        for g, h in pairs:
            gf = model.translate(g, f_set)
            hf = model.translate(h, f_set)
            values.append(
                mu_partition(gf, hf, cover) if cover.is_partition() else mu_value(gf, hf, cover)
            )
        min_mu = min(values) if values else len(f_set)
        per_radius.append((radius, len(f_set), min_mu))
    rows = []
    for theta in grid:
        for radius, f_size, min_mu in per_radius:
            ratio = Fraction(min_mu, f_size)
            rows.append(
                {
                    "theta": ser.frac_str(theta),
                    "radius": radius,
                    "f_size": f_size,
                    "min_mu": min_mu,
                    "min_ratio": ser.frac_str(ratio),
                    "min_ratio_decimal_lossy": float(ratio),
                    "pass": min_mu >= theta_threshold(theta, f_size),
                }
            )
    out = args.out or "sweep.csv"
    directory = os.path.dirname(os.path.abspath(out)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".csv")
    with os.fdopen(fd, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        writer.writerows(rows)
    os.replace(tmp, out)
    print(f"wrote {len(rows)} rows to {out}", file=sys.stderr)
    return 0


def _cmd_folner_check(args, argv) -> int:
    doc = _load_json(args.path)
    if doc.get("schema") not in (ser.FOLNER_CERT_SCHEMA, ser.FOLNER_EXHAUSTED_SCHEMA):
        raise ValueError("not a certificate document")
    return _verify_certificate_doc(doc)


# -- parser -------------------------------------------------------------------


def _add_common(p, seed=True):
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--out", help="write the result document to this path")
    if seed:
        p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="matchcover",
        description="exact covering calculus, matching certificates, and searches",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cover", help="covering calculus on JSON coverings")
    p.add_argument("action", choices=["refines", "join", "star", "star-refines"])
    p.add_argument("--coarse")
    p.add_argument("--fine")
    p.add_argument("--u")
    p.add_argument("--v")
    p.add_argument("-n", type=int, default=1, help="star iterate count")
    _add_common(p, seed=False)
    p.set_defaults(handler=_cmd_cover)

    p = sub.add_parser("mu", help="matching number between two sets under a covering")
    p.add_argument("--cover", required=True)
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    _add_common(p, seed=False)
    p.set_defaults(handler=_cmd_mu)

    p = sub.add_parser("match", help="maximum matching on a bipartite graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--deficiency", action="store_true")
    _add_common(p, seed=False)
    p.set_defaults(handler=_cmd_match)

    p = sub.add_parser("folner", help="certificate search, checking, adversaries")
    fol = p.add_subparsers(dest="action", required=True)

    q = fol.add_parser("search")
    q.add_argument("--group", required=True)
    q.add_argument("--cover")
    q.add_argument("--coloring")
    q.add_argument("--e")
    q.add_argument("--e-file")
    q.add_argument("--theta", required=True)
    q.add_argument("--mode", choices=["asym", "sym"], default="asym")
    q.add_argument("--strategy", choices=["balls", "local"], default="balls")
    q.add_argument("--max-radius", type=int, default=8)
    q.add_argument("--budget", type=int, default=300)
    _add_common(q)
    q.set_defaults(handler=_cmd_folner_search)

    q = fol.add_parser("check")
    q.add_argument("path")
    _add_common(q, seed=False)
    q.set_defaults(handler=_cmd_folner_check)

    q = fol.add_parser("adversary")
    q.add_argument("--group", required=True)
    q.add_argument("--f")
    q.add_argument("--f-file")
    q.add_argument("--e")
    q.add_argument("--e-file")
    q.add_argument("--colors", type=int, default=1, help="colors are 0..k")
    q.add_argument("--mode", choices=["asym", "sym"], default="asym")
    q.add_argument("--strategy", choices=["exhaustive", "local"], default="local")
    q.add_argument("--budget", type=int, default=2000)
    q.add_argument("--plateau", type=int, default=20)
    _add_common(q)
    q.set_defaults(handler=_cmd_folner_adversary)

    q = fol.add_parser("net")
    q.add_argument("--group", required=True)
    q.add_argument("--u")
    q.add_argument("--u-file")
    _add_common(q, seed=False)
    q.set_defaults(handler=_cmd_folner_net)

    q = fol.add_parser("mono")
    q.add_argument("--group", required=True)
    q.add_argument("--window", required=True)
    q.add_argument("--cover", required=True)
    q.add_argument("--e")
    q.add_argument("--e-file")
    _add_common(q, seed=False)
    q.set_defaults(handler=_cmd_folner_mono)

    p = sub.add_parser("means", help="convolution and rational approximation")
    p.add_argument("action", choices=["convolve", "rationalize"])
    p.add_argument("--group")
    p.add_argument("--a")
    p.add_argument("--b")
    p.add_argument("--alpha")
    p.add_argument("--theta")
    _add_common(p, seed=False)
    p.set_defaults(handler=_cmd_means)

    p = sub.add_parser("ramsey", help="matching condition on finite metric spaces")
    ram = p.add_subparsers(dest="action", required=True)
    q = ram.add_parser("check")
    q.add_argument("--a", required=True)
    q.add_argument("--b", required=True)
    q.add_argument("--c", required=True)
    q.add_argument("--colors", type=int, default=1)
    q.add_argument("--eps", required=True)
    q.add_argument("--budget", type=int, default=2000)
    q.add_argument("--max-family", type=int, default=4)
    _add_common(q)
    q.set_defaults(handler=_cmd_ramsey)

    p = sub.add_parser("sweep", help="CSV of min ratios per (theta, radius)")
    p.add_argument("--group", required=True)
    p.add_argument("--e")
    p.add_argument("--e-file")
    p.add_argument("--cover")
    p.add_argument("--coloring")
    p.add_argument("--theta-grid", required=True)
    p.add_argument("--max-radius", type=int, default=8)
    p.add_argument("--mode", choices=["asym", "sym"], default="asym")
    _add_common(p, seed=False)
    p.set_defaults(handler=_cmd_sweep)

    p = sub.add_parser("verify", help="replay any emitted certificate document")
    p.add_argument("path")
    _add_common(p, seed=False)
    p.set_defaults(handler=_cmd_verify)

    return parser


def dispatch(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.handler(args, argv)
    except (ValueError, OSError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))
