"""Command-line front end.

Batch semantics: parse an action document, run one job over its point
panel, emit a deterministic report.  JSON output is byte-identical for
identical jobs (including the seed); timings appear only in text mode.

Exit codes: 0 success, 2 parse error, 3 precondition violation,
4 enumeration or degree bound exhausted.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import corpus, graded, invariants, torus
from .actions import (
    ActionDocument,
    GradingData,
    ProjectivePoint,
    parse_document,
)
from .errors import (
    BoundExceeded,
    ParseError,
    PreconditionError,
    StablociError,
)
from .linalg import zero_vec
from .ratio import format_fraction, parse_fraction

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_BOUNDS = 4


def _fr(x) -> str:
    return format_fraction(Fraction(x))


def _frs(xs) -> list[str]:
    return [_fr(x) for x in xs]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stabloci",
        description="Exact stability loci, stratifications and invariants for linear actions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, action_required: bool = True) -> None:
        p.add_argument("--action", required=action_required, help="action document path")
        p.add_argument("--points", default=None, help="extra points: file or inline name:c0,c1,...;...")
        p.add_argument("--chi", default=None, help='character twist "p/q" (comma-separated for rank > 1)')
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", choices=("json", "text"), default="json")

    p = sub.add_parser("stability", help="torus verdicts over the panel")
    common(p)

    p = sub.add_parser("chamber", help="lowest bounded chamber and adapted window")
    common(p)

    p = sub.add_parser("strata", help="unstable stratification data")
    common(p)
    p.add_argument("--subset-cap", type=int, default=16)

    p = sub.add_parser("graded", help="graded-unipotent stability report")
    common(p)

    p = sub.add_parser("hatstable", help="product-line stability at a rational parameter")
    common(p)
    p.add_argument("--q", default="0", help='rational parameter "p/q"')
    p.add_argument("--m", type=int, default=0, help="line twist power (0 = computed lower bound)")

    p = sub.add_parser("invariants", help="invariant dimension tables and verdicts")
    common(p, action_required=False)
    p.add_argument("--max-degree", type=int, default=0, help="0 = document bound")
    p.add_argument("--sl2", type=int, default=0, help="binary-form degree for reductive tables")

    p = sub.add_parser("examples", help="regenerate the built-in corpus")
    p.add_argument("--out", default="corpus", help="output directory")
    p.add_argument("--format", choices=("json", "text"), default="json")
    return parser


def _parse_chi(text: str | None, rank: int) -> tuple[Fraction, ...]:
    if text is None:
        return zero_vec(rank)
    parts = [p.strip() for p in text.split(",")]
    values = tuple(parse_fraction(p) for p in parts)
    if len(values) == 1 and rank > 1:
        values = values * rank
    if len(values) != rank:
        raise ParseError(f"twist has {len(values)} entries, torus rank is {rank}")
    return values


def _load_document(args) -> ActionDocument:
    path = Path(args.action)
    if not path.exists():
        raise ParseError(f"action document {path} does not exist")
    doc = parse_document(path.read_text())
    if args.chi is not None and doc.action.grading is not None:
        chi = parse_fraction(args.chi.split(",")[0])
        grading = GradingData(
            gm_weights=doc.action.grading.gm_weights, character_twist=chi
        )
        action = dataclasses.replace(doc.action, grading=grading)
        doc = dataclasses.replace(doc, action=action)
    if args.points:
        doc = dataclasses.replace(doc, points=doc.points + _parse_points(args.points, doc.action.n))
    return doc


def _parse_points(text: str, n: int) -> tuple[tuple[str, ProjectivePoint], ...]:
    path = Path(text)
    out = []
    if path.exists():
        raw = json.loads(path.read_text())
        for entry in raw:
            coords = [parse_fraction(c) for c in entry["coords"]]
            out.append((entry["name"], ProjectivePoint(coords)))
    else:
        for chunk in text.split(";"):
            if not chunk.strip():
                continue
            name, _, coord_text = chunk.partition(":")
            coords = [parse_fraction(c) for c in coord_text.split(",")]
            out.append((name.strip(), ProjectivePoint(coords)))
    for name, p in out:
        if p.n != n:
            raise ParseError(f"point {name!r} has dimension {p.n}, action has {n}")
    return tuple(out)


def _verdict_row(name: str, verdict: torus.StabilityVerdict) -> dict:
    row = {
        "point": name,
        "status": verdict.status.value,
        "support": list(verdict.support),
        "hull_position": verdict.hull_position.value if verdict.hull_position else None,
        "detail": verdict.detail,
        "heuristic": verdict.heuristic,
    }
    if verdict.heuristic:
        row["seed"] = verdict.seed
    return row


def cmd_stability(args) -> dict:
    doc = _load_document(args)
    chi = _parse_chi(args.chi, doc.action.torus.rank)
    rows = [
        _verdict_row(name, torus.torus_verdict(doc.action.torus, chi, p))
        for name, p in doc.points
    ]
    return {
        "command": "stability",
        "label": doc.action.label,
        "chi": _frs(chi),
        "rows": rows,
    }


def cmd_chamber(args) -> dict:
    doc = _load_document(args)
    g = doc.action.grading
    if g is None:
        raise PreconditionError("chamber report needs grading data")
    chamber = torus.lowest_bounded_chamber(g)
    om = graded.omega_sequence(g)
    payload = {
        "command": "chamber",
        "label": doc.action.label,
        "chi": _fr(g.character_twist),
        "chamber": {"lo": _fr(chamber.lo), "hi": _fr(chamber.hi)},
        "contains_zero_interior": torus.chamber_contains_zero_interior(chamber),
        "omega": _frs(om.values),
        "window": None,
    }
    if len(om.values) >= 2:
        window = graded.adapted_window(om)
        payload["window"] = {
            "lo": _fr(window.lo),
            "hi": _fr(window.hi),
            "well_adapted": _fr(window.well_adapted_hi),
        }
    return payload


def cmd_strata(args) -> dict:
    doc = _load_document(args)
    chi = _parse_chi(args.chi, doc.action.torus.rank)
    strat = torus.stratification_indices(doc.action.torus, chi, args.subset_cap)
    indices = [
        {"beta": _frs(idx.beta), "norm_sq": _fr(idx.norm_sq), "supports": [list(s) for s in supports]}
        for idx, supports in strat.assignments
    ]
    rows = []
    for name, p in doc.points:
        idx = torus.stratum_of(doc.action.torus, chi, p)
        rows.append({"point": name, "beta": _frs(idx.beta), "norm_sq": _fr(idx.norm_sq)})
    quotients = []
    for idx in strat.indices:
        if idx.is_zero():
            continue
        data = torus.stratum_quotient_data(doc.action.torus, chi, idx, args.subset_cap)
        quotients.append(
            {
                "beta": _frs(idx.beta),
                "z_indices": list(data.z_indices),
                "above_indices": list(data.above_indices),
                "below_indices": list(data.below_indices),
                "adapted_twist": _frs(data.adapted_twist),
                "delta": _fr(data.delta),
            }
        )
    return {
        "command": "strata",
        "label": doc.action.label,
        "chi": _frs(chi),
        "indices": indices,
        "rows": rows,
        "quotients": quotients,
    }


def _condition_payload(report: graded.ConditionReport) -> dict:
    return {
        "verdict": report.verdict.value,
        "exact": report.exact,
        "witness": _frs(report.witness.coords) if report.witness else None,
        "detail": report.detail,
        "seed": report.seed,
        "samples": report.samples,
    }


def cmd_graded(args) -> dict:
    doc = _load_document(args)
    action = doc.action
    g = action.grading
    if g is None:
        raise PreconditionError("graded report needs grading data")
    cstar = graded.check_condition_cstar(action, seed=args.seed)
    cstar_tilde = graded.check_condition_cstar_tilde(action, seed=args.seed)
    payload: dict = {
        "command": "graded",
        "label": action.label,
        "chi": _fr(g.character_twist),
        "conditions": {
            "cstar": _condition_payload(cstar),
            "cstar_tilde": _condition_payload(cstar_tilde),
        },
        "blowup_centre": None,
        "rows": [],
    }
    if action.unipotent_dim() <= 1:
        centre = graded.blowup_centre(action)
        payload["blowup_centre"] = {
            "max_stab_dim_x0min": centre.max_stab_dim_x0min,
            "meets_x0min": centre.meets_x0min,
            "equations": [eq.format() for eq in centre.equations],
        }
    for name, p in doc.points:
        verdict = graded.hat_stable_minplus(action, p, seed=args.seed)
        row = _verdict_row(name, verdict)
        row["in_z_min"] = graded.in_Z_min(g, p)
        row["in_x0_min"] = graded.in_X0_min(g, p)
        if action.unipotent is not None:
            row["stab_dim"] = graded.stab_dim_u(action.unipotent, p).dim
        payload["rows"].append(row)
    return payload


def cmd_hatstable(args) -> dict:
    doc = _load_document(args)
    q = parse_fraction(args.q)
    m = args.m if args.m else max(doc.bounds.product_m, graded.m_lower_bound(doc.action, q))
    rows = []
    for name, p in doc.points:
        verdict = graded.q_hat_stable(doc.action, q, m, p, seed=args.seed)
        rows.append(_verdict_row(name, verdict))
    return {
        "command": "hatstable",
        "label": doc.action.label,
        "q": _fr(q),
        "m": m,
        "rows": rows,
    }


def cmd_invariants(args) -> dict:
    if args.sl2:
        n = args.sl2
        bound = args.max_degree or 6
        dims = []
        for d in range(1, bound + 1):
            space = invariants.sl2_invariants_binary_form(n, d, degree_cap=max(bound, 12))
            dims.append(
                {
                    "degree": d,
                    "dim": space.dim,
                    "oracle": invariants.sl2_weight_counting_dimension(n, d),
                }
            )
        return {
            "command": "invariants",
            "sl2_form_degree": n,
            "max_degree": bound,
            "dimensions": dims,
        }
    if not args.action:
        raise ParseError("invariants needs --action or --sl2")
    doc = _load_document(args)
    action = doc.action
    if action.unipotent is None:
        raise PreconditionError("invariant tables need unipotent data (or use --sl2)")
    bound = args.max_degree or doc.bounds.max_degree
    gm = action.grading.gm_weights if action.grading is not None else None
    spaces = [
        invariants.unipotent_invariants(action.unipotent, d, gm_weights=gm, degree_cap=bound)
        for d in range(1, bound + 1)
    ]
    report = invariants.generator_degree_report(spaces)
    rows = []
    for name, p in doc.points:
        verdict = invariants.invariant_nonvanishing_verdict(spaces, p)
        rows.append(
            {
                "point": name,
                "nonvanishing": verdict.found,
                "witness_degree": verdict.witness_degree,
                "bound": verdict.bound,
            }
        )
    return {
        "command": "invariants",
        "label": action.label,
        "max_degree": bound,
        "dimensions": [
            {
                "degree": row.degree,
                "dim": row.dim,
                "from_products": row.from_products,
                "new_generators": row.new_generators,
            }
            for row in report
        ],
        "rows": rows,
    }


def cmd_examples(args) -> dict:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for name, text in corpus.render_corpus():
        (out_dir / name).write_text(text)
        written.append(str(out_dir / name))
    return {"command": "examples", "written": written}


_COMMANDS = {
    "stability": cmd_stability,
    "chamber": cmd_chamber,
    "strata": cmd_strata,
    "graded": cmd_graded,
    "hatstable": cmd_hatstable,
    "invariants": cmd_invariants,
    "examples": cmd_examples,
}


def _render_text(payload: dict, elapsed: float) -> str:
    lines = [f"# {payload['command']}"]
    for key, value in payload.items():
        if key in ("command", "rows"):
            continue
        lines.append(f"{key}: {json.dumps(value, sort_keys=True)}")
    for row in payload.get("rows", []):
        parts = [f"{k}={json.dumps(v)}" for k, v in row.items()]
        lines.append("  " + " ".join(parts))
    lines.append(f"elapsed_s: {elapsed:.3f}")
    return "\n".join(lines) + "\n"


def run(argv: list[str]) -> tuple[int, str]:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        payload = _COMMANDS[args.command](args)
    except ParseError as exc:
        return EXIT_PARSE, f"parse error: {exc}\n"
    except PreconditionError as exc:
        return EXIT_PRECONDITION, f"precondition violated: {exc}\n"
    except BoundExceeded as exc:
        return EXIT_BOUNDS, f"bound exhausted: {exc}\n"
    except StablociError as exc:
        return EXIT_PRECONDITION, f"error: {exc}\n"
    elapsed = time.perf_counter() - start
    if args.format == "text":
        return EXIT_OK, _render_text(payload, elapsed)
    return EXIT_OK, json.dumps(payload, sort_keys=True, indent=2) + "\n"


def main(argv: list[str] | None = None) -> int:
    code, output = run(sys.argv[1:] if argv is None else argv)
    stream = sys.stdout if code == EXIT_OK else sys.stderr
    stream.write(output)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
