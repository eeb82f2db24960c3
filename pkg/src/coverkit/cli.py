"""Command-line entry point.

Subcommands: group, cover {check, invariants, deformations, emit},
construction62, prop66, resolve, moduli-dim.  Reports render as markdown or
JSON (--format); every number is exact (integers or p/q).  Exit codes:
0 success, 2 for unusable input (bad JSON, schema violations, infeasible
data), 3 when --strict (or COVERKIT_STRICT=1) and a report contains an
"unknown" value.

Cover configurations are JSON objects with the pinned schema tag:

    {
      "schema": "coverkit/1",
      "base": "P2" | {...inline base...},
      "group": [2, 2],
      "inertia": [[1, 0], [0, 1], [1, 1]],
      "branch_classes": [[2], [2], [2]],
      "reduced_classes": [[2], [2]],          # optional; solved when absent
      "markers": {"reduced": [[...], ...]},   # optional continuous parts
      "intersection_pattern": [[0, 1], ...]   # optional; default all pairs
    }

Unknown keys are rejected.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .base import NumericalBase, Pic0Marker
from .covers import (
    CoverData,
    InfeasibleReduction,
    check_fundamental_relations,
    generic_aut_hypotheses,
    smoothness_audit,
)
from .deformations import (
    cstar_weights,
    moduli_dimension,
    predict_generic_automorphisms,
    tangent_table,
)
from .family import SimplexCoverFamily, classify_components, symmetry_bound_report
from .groups import FinAbGroup, InertiaDatum, enumerate_inertia
from .invariants import cover_invariants, euler_strata
from .relations import FLAVORS, emit
from .reportfmt import markdown_table, qjson, qstr
from .resolution import H_UNIT, H_VANISHING, trace_even, trace_odd

SCHEMA = "coverkit/1"

_COVER_KEYS = {
    "schema",
    "base",
    "group",
    "inertia",
    "branch_classes",
    "reduced_classes",
    "markers",
    "intersection_pattern",
}


class ConfigError(ValueError):
    pass


def load_cover_config(path: str) -> CoverData:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as err:
        raise ConfigError(f"cannot read {path}: {err}") from err
    except json.JSONDecodeError as err:
        raise ConfigError(f"malformed JSON in {path}: {err}") from err
    return cover_from_dict(data)


def cover_from_dict(data: dict) -> CoverData:
    if not isinstance(data, dict):
        raise ConfigError("cover configuration must be a JSON object")
    if data.get("schema") != SCHEMA:
        raise ConfigError(f'configuration must carry "schema": "{SCHEMA}"')
    extra = set(data) - _COVER_KEYS
    if extra:
        raise ConfigError(f"unknown configuration keys: {sorted(extra)}")
    try:
        base = NumericalBase.from_dict(data["base"])
        group = FinAbGroup(tuple(data["group"]))
        inertia = [InertiaDatum(group.element(tuple(c))) for c in data["inertia"]]
        branch = [base.cls(tuple(c)) for c in data["branch_classes"]]
        reduced = None
        if "reduced_classes" in data:
            reduced = [base.cls(tuple(c)) for c in data["reduced_classes"]]
        branch_markers = None
        reduced_markers = None
        if "markers" in data:
            mk = data["markers"]
            unknown = set(mk) - {"reduced", "branch"}
            if unknown:
                raise ConfigError(f"unknown marker keys: {sorted(unknown)}")
            if "reduced" in mk:
                reduced_markers = [Pic0Marker(tuple(c)) for c in mk["reduced"]]
            if "branch" in mk:
                branch_markers = [Pic0Marker(tuple(c)) for c in mk["branch"]]
            if reduced_markers is not None and branch_markers is None:
                # branch divisor markers follow from the reduced ones only in
                # special families; require both here
                raise ConfigError("markers need both 'reduced' and 'branch' lists")
        pattern = None
        if "intersection_pattern" in data:
            pattern = [tuple(s) for s in data["intersection_pattern"]]
        return CoverData.create(
            group,
            inertia,
            base,
            branch,
            reduced_classes=reduced,
            branch_markers=branch_markers,
            reduced_markers=reduced_markers,
            intersection_pattern=pattern,
        )
    except ConfigError:
        raise
    except (KeyError, TypeError) as err:
        raise ConfigError(f"bad cover configuration: {err}") from err
    except InfeasibleReduction as err:
        raise ConfigError(f"reduced system infeasible: {err}") from err
    except ValueError as err:
        raise ConfigError(str(err)) from err


def _contains_unknown(obj) -> bool:
    if obj is None or obj == "unknown":
        return True
    if isinstance(obj, dict):
        return any(_contains_unknown(v) for v in obj.values())
    if isinstance(obj, (list, tuple)):
        return any(_contains_unknown(v) for v in obj)
    return False


def _parse_coords(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as err:
        raise ConfigError(f"expected comma-separated integers, got {text!r}") from err


class Report:
    """Accumulates markdown lines alongside a JSON payload."""

    def __init__(self):
        self.lines: list[str] = []
        self.payload: dict = {}

    def heading(self, text):
        self.lines += [f"## {text}", ""]

    def line(self, text=""):
        self.lines.append(text)

    def table(self, headers, rows):
        self.lines += [markdown_table(headers, rows), ""]

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.payload, indent=2, sort_keys=True)
        return "\n".join(self.lines).rstrip() + "\n"


# -- subcommand implementations -------------------------------------------


def cmd_group(args) -> Report:
    group = FinAbGroup(_parse_coords(args.factors))
    data = enumerate_inertia(group)
    rep = Report()
    rep.heading(f"Inertia data of {group}")
    rep.table(
        ["element", "subgroup order"],
        [["(" + ", ".join(map(str, d.generator.coords)) + ")", d.m] for d in data],
    )
    rep.line(f"count: {len(data)} (= group order - 1)")
    rep.payload = {
        "group": list(group.invariant_factors),
        "inertia": [{"element": list(d.generator.coords), "order": d.m} for d in data],
        "count": len(data),
    }
    return rep


def cmd_cover_check(args) -> Report:
    cd = load_cover_config(args.config)
    rep = Report()
    rep.heading("Cover data check")
    relations_ok = check_fundamental_relations(cd)
    audit = smoothness_audit(cd)
    rep.table(
        ["check", "result"],
        [
            ["totally ramified", True],
            ["fundamental relations", relations_ok],
            ["declared pattern injective", audit.all_injective],
        ],
    )
    if audit.maximal_injective is not None:
        rep.line("maximal joint intersections: " + (", ".join(str(list(s)) for s in audit.maximal_injective) or "none"))
    for note in audit.notes:
        rep.line(f"note: {note}")
    rep.payload = {
        "totally_ramified": True,
        "fundamental_relations": relations_ok,
        "smoothness": audit.to_dict(),
    }
    if args.hyperplane is not None:
        gate = generic_aut_hypotheses(cd, cd.base.cls(_parse_coords(args.hyperplane)), args.steps, args.distinguished)
        rep.line()
        rep.heading("Generic-automorphism hypotheses")
        rep.table(
            ["quantity", "value"],
            [
                ["adjoint class", str(gate.adjoint_class)],
                ["adjoint ample", gate.adjoint_ample],
                ["mobile class", str(gate.mobile_class)],
                ["mobile positive", gate.mobile_positive],
                ["plausible", gate.plausible],
            ],
        )
        for note in gate.notes:
            rep.line(f"note: {note}")
        rep.payload["hypotheses"] = gate.to_dict()
    return rep


def cmd_cover_invariants(args) -> Report:
    cd = load_cover_config(args.config)
    inv = cover_invariants(cd)
    strata = euler_strata(cd)
    rep = Report()
    rep.heading("Cover invariants")
    rep.table(
        ["invariant", "value"],
        [
            ["K^2", inv.canonical_squared],
            ["Euler number", inv.euler_number],
            ["chi(O)", inv.chi_o],
            ["general type (numerical)", inv.general_type_verdict],
        ],
    )
    rep.table(
        ["stratum", "e downstairs", "preimages", "contribution"],
        [[s["stratum"], s["euler_downstairs"], s["preimages"], s["contribution"]] for s in strata],
    )
    rep.payload = {
        **inv.to_dict(),
        "strata": [{k: qjson(v) for k, v in s.items()} for s in strata],
    }
    return rep


def cmd_cover_deformations(args) -> Report:
    cd = load_cover_config(args.config)
    table = tangent_table(cd)
    rep = Report()
    rep.heading("Deformation dimension table")
    rows = []
    for chi in sorted(table.tangent, key=lambda c: c.exponents):
        rows.append(
            [
                ",".join(map(str, chi.exponents)),
                qstr(table.tangent[chi]),
                qstr(table.obstruction_lower[chi]),
            ]
        )
    rep.table(["character", "tangent dim", "obstruction lower bound"], rows)
    rep.line(f"natural deformation parameters: {qstr(table.natural_deformation_dim)}")
    rep.line(f"galois only: {qstr(table.galois_only)}")
    payload = table.to_dict()
    if not table.unknown_terms:
        predicted = predict_generic_automorphisms(cd, table)
        rep.line(f"predicted generic symmetry group: {predicted} (order {predicted.order})")
        rep.line("(subgroup surviving generic perturbations; special members may have more)")
        payload["predicted_group"] = {
            "order": predicted.order,
            "invariant_factors": list(predicted.invariant_factors()),
        }
    dim = moduli_dimension(cd)
    rep.line(f"moduli dimension: {qstr(dim)}")
    payload["moduli_dimension"] = qjson(dim)
    weights = cstar_weights(cd)
    payload["torus_weights"] = weights.to_dict()
    for a in table.assumptions:
        rep.line(f"assumption: {a}")
    rep.payload = payload
    return rep


def cmd_cover_emit(args) -> Report:
    cd = load_cover_config(args.config)
    text = emit(cd, args.flavor, args.galois)
    rep = Report()
    rep.lines = [text.rstrip()]
    rep.payload = {"flavor": args.flavor, "galois": args.galois, "text": text}
    return rep


def cmd_construction62(args) -> Report:
    family = SimplexCoverFamily(_parse_coords(args.d))
    base = NumericalBase.from_dict(args.base)
    xi = base.cls(_parse_coords(args.xi))
    preds = classify_components(family, base, xi)
    rep = Report()
    rep.heading(f"Component classification for chain {list(family.d)}")
    rep.table(
        ["k", "predicted order", "predicted group"],
        [[p.k, p.predicted.order, str(p.predicted)] for p in preds],
    )
    rep.payload = {
        "d": list(family.d),
        "base": base.to_dict(),
        "xi": list(xi.coords),
        "components": [p.to_dict() for p in preds],
    }
    return rep


def cmd_prop66(args) -> Report:
    report = symmetry_bound_report(args.n)
    rep = Report()
    rep.heading(f"Symmetry bound report (n = {args.n})")
    d = report.to_dict()
    rep.table(["quantity", "value"], [[k, v] for k, v in d.items() if k != "n"])
    rep.line("the canonical-degree variants disagree; all are reported, none adjudicated")
    rep.payload = d
    return rep


def cmd_resolve(args) -> Report:
    if args.n % 2 == 0:
        trace = trace_even(args.n)
    else:
        trace = trace_odd(args.n, args.case)
    rep = Report()
    rep.heading(f"Blow-up trace: order {args.n}, case {trace.case}")
    rep.table(
        ["step", "center", "chart", "equation", "ledger"],
        [
            [
                s.name,
                s.center,
                s.chart,
                s.equation.render(args.n),
                "D + " + " + ".join(f"{c}{name}" for name, c in s.ledger[1:]),
            ]
            for s in trace.steps
        ],
    )
    rep.table(
        ["divisor", "cyclic degree", "canonical multiple", "verdict"],
        [[v.name, qstr(v.inertia_order), qstr(v.value), v.flag] for v in trace.verdicts],
    )
    rep.line(f"all verdicts negative/rational: {qstr(trace.all_negative)}")
    rep.payload = trace.to_dict()
    return rep


def cmd_moduli_dim(args) -> Report:
    cd = load_cover_config(args.config)
    dim = moduli_dimension(cd, aut_base_dim=args.aut_dim)
    rep = Report()
    rep.heading("Moduli dimension")
    rep.line(f"dimension: {qstr(dim)}")
    rep.payload = {"moduli_dimension": qjson(dim)}
    return rep


# -- wiring ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coverkit", description="exact arithmetic for abelian covers")
    parser.add_argument("--format", choices=("markdown", "json"), default="markdown")
    parser.add_argument("--strict", action="store_true", help="exit 3 when a report contains unknowns")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("group", help="inertia data of a finite abelian group")
    p.add_argument("--factors", required=True, help="invariant factors, e.g. 2,2")
    p.set_defaults(func=cmd_group)

    cover = sub.add_parser("cover", help="operations on a cover configuration")
    cover_sub = cover.add_subparsers(dest="cover_command", required=True)

    p = cover_sub.add_parser("check", help="validate and audit a cover configuration")
    p.add_argument("config")
    p.add_argument("--hyperplane", help="hyperplane class for the hypothesis gate, e.g. 1 or 1,0")
    p.add_argument("--steps", type=int, default=1, help="margin multiplier for the hypothesis gate")
    p.add_argument("--distinguished", type=int, default=0, help="index of the moved branch divisor")
    p.set_defaults(func=cmd_cover_check)

    p = cover_sub.add_parser("invariants", help="canonical, Euler and chi invariants")
    p.add_argument("config")
    p.set_defaults(func=cmd_cover_invariants)

    p = cover_sub.add_parser("deformations", help="deformation dimension table")
    p.add_argument("config")
    p.set_defaults(func=cmd_cover_deformations)

    p = cover_sub.add_parser("emit", help="emit the defining relations")
    p.add_argument("config")
    p.add_argument("--flavor", choices=FLAVORS, default="plain")
    p.add_argument("--galois", action="store_true")
    p.set_defaults(func=cmd_cover_emit)

    p = sub.add_parser("construction62", help="classify component loci of the simplex family")
    p.add_argument("--d", required=True, help="divisibility chain, e.g. 3,3")
    p.add_argument("--base", default="abelian_pp", help="base preset name")
    p.add_argument("--xi", required=True, help="shared branch class, e.g. 2")
    p.set_defaults(func=cmd_construction62)

    p = sub.add_parser("prop66", help="symmetry order vs canonical degree for the square family")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_prop66)

    p = sub.add_parser("resolve", help="blow-up trace of the degenerate local model")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--case", choices=(H_UNIT, H_VANISHING), default=H_UNIT)
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser("moduli-dim", help="moduli dimension of a cover configuration")
    p.add_argument("config")
    p.add_argument("--aut-dim", type=int, default=None, help="dimension of Aut of the base to subtract")
    p.set_defaults(func=cmd_moduli_dim)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    strict = args.strict or os.environ.get("COVERKIT_STRICT") == "1"
    try:
        report = args.func(args)
    except ConfigError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    print(report.render(args.format), end="")
    if strict and _contains_unknown(report.payload):
        print("strict mode: report contains unknown values", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
