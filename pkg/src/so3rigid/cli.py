"""Command-line front end.

Exit codes: 0 certified or verified, 2 inconclusive, 1 input error.
Every JSON report is written with sorted keys, so identical inputs give
byte-identical output.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__, coh, fusion, pants, rep
from .cyclo import CMatrix, Embedding, distinguished_embeddings

EXIT_OK, EXIT_INPUT, EXIT_INCONCLUSIVE = 0, 1, 2
CASES = ("S04", "S05", "S1", "S11")


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, default=str)


def _digest(obj) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True, default=str).encode()).hexdigest()


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError as exc:
        raise InputError(f"no such file: {path}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _colors_arg(text: str, level: int) -> list[int]:
    if not text.strip():
        return []
    try:
        cols = [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise InputError(f"boundary colors must be comma-separated integers, got {text!r}") from exc
    for c in cols:
        try:
            fusion.check_color(c, level)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    return cols


def _assign_arg(text: str) -> dict[str, str]:
    out = {}
    for part in filter(None, (p.strip() for p in text.split(","))):
        if "=" not in part:
            raise InputError(f"assignment {part!r} is not of the form name=word")
        k, v = part.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _emit(args, payload: dict, text: str) -> None:
    if args.out:
        Path(args.out).write_text(_dumps(payload) + "\n")
    print(_dumps(payload) if args.json else text)


# -- commands ---------------------------------------------------------------------

def cmd_dim(args) -> int:
    b = _colors_arg(args.boundary, args.level)
    d = pants.dim_block(args.genus, len(b), b, args.level)
    _emit(args, {"genus": args.genus, "boundary": b, "level": args.level, "dim": d}, str(d))
    return EXIT_OK


def cmd_colorings(args) -> int:
    b = _colors_arg(args.boundary, args.level)
    G = pants.standard_graph(args.genus, len(b), b, args.level)
    tuples = pants.coloring_tuples(G)
    payload = {"edges": list(G.edge_names), "colorings": [list(t) for t in tuples], "graph": G.to_json()}
    text = "\n".join([" ".join(G.edge_names)] + [" ".join(map(str, t)) for t in tuples])
    _emit(args, payload, text)
    return EXIT_OK


def cmd_props(args) -> int:
    rep_ = fusion.check_properties(args.level)
    # this report is JSON by definition
    print(_dumps(rep_))
    if args.out:
        Path(args.out).write_text(_dumps(rep_) + "\n")
    return EXIT_OK


def _rep_checks(r: rep.Rep) -> dict:
    out: dict = {"dim": r.dim, "commutant_dim": rep.commutant_dim(r)}
    orders = rep.generator_orders(r)
    out["generator_power_level_scalar"] = {k: (v is not None) for k, v in orders.items()}
    try:
        H = rep.invariant_form(r)
    except ValueError as exc:
        out["invariant_form"] = str(exc)
        return out
    sigs = {}
    for k in range(1, r.level):
        try:
            sigs[str(k)] = list(rep.signature(H, Embedding(r.level, k)))
        except rep.IndeterminateSignature:
            sigs[str(k)] = "indeterminate"
    out["invariant_form"] = H.matrix.to_json()
    out["signatures_advisory"] = sigs
    out["distinguished_embeddings"] = [e.k for e in distinguished_embeddings(r.level)]
    return out


def cmd_rep(args) -> int:
    if args.action == "build":
        if not args.case:
            raise InputError("rep build needs --case")
        r = rep.build_case(args.case, args.level)
        payload = r.to_json()
        _emit(args, payload, f"{r.name} at level {r.level}: dimension {r.dim}, generators {', '.join(r.generators)}")
        return EXIT_OK
    if not args.rep:
        raise InputError("rep check needs --rep FILE")
    r = rep.Rep.from_json(_load_json(args.rep))
    checks = _rep_checks(r)
    ok = checks["commutant_dim"] == 1 and all(checks["generator_power_level_scalar"].values())
    text = (f"dim {checks['dim']}, commutant {checks['commutant_dim']}, "
            f"signatures {checks.get('signatures_advisory')}")
    _emit(args, {"checks": checks, "ok": ok}, text)
    return EXIT_OK if ok else EXIT_INCONCLUSIVE


def cmd_h1(args) -> int:
    p = coh.Presentation.from_json(_load_json(args.presentation))
    r = rep.Rep.from_json(_load_json(args.rep))
    assign = _assign_arg(args.assign) if args.assign else {g: g for g in p.generators}
    mod = coh.ad_module(r, assign)
    report = coh.h1_presented(p, mod)
    payload = report.to_json()
    _emit(args, payload, f"H1 = {report.h1} (Z1 {report.z1}, B1 {report.b1}): {report.note}")
    return EXIT_OK if report.h1 == 0 else EXIT_INCONCLUSIVE


def _ledger(case: str, level: int) -> dict:
    blocks = coh.case_blocks(case, level)
    li = coh.ledger_dims_from_blocks(*blocks)
    return {
        "case": case,
        "level": level,
        "cut1": {str(k): v for k, v in blocks[0].items()},
        "cut2": {str(k): v for k, v in blocks[1].items()},
        "double": {f"{a},{b}": v for (a, b), v in blocks[2].items()},
        "input": li.to_json(),
        "h1": coh.mv_ledger(li),
    }


def cmd_ledger(args) -> int:
    out = _ledger(args.case, args.level)
    i = out["input"]
    _emit(args, out, f"{i['m12']} - {i['m1']} - {i['m2']} + {i['mG']} = {out['h1']}")
    return EXIT_OK


def rigidity_report(case: str, level: int, presentation: coh.Presentation | None = None,
                    assign: dict[str, str] | None = None) -> dict:
    """Build, check, ledger and H1 for a registered case; deterministic."""
    if case not in CASES:
        raise InputError(f"unsupported case {case!r}; expected one of {', '.join(CASES)}")
    inputs = {"case": case, "level": level,
              "presentation": presentation.to_json() if presentation else None, "assign": assign}
    r = rep.build_case(case, level)
    checks = _rep_checks(r)
    checks.pop("invariant_form", None)
    report: dict = {
        "tool": "so3rigid",
        "version": __version__,
        "inputs": inputs,
        "input_hash": _digest(inputs),
        "rep_hash": _digest(r.to_json()),
        "checks": checks,
    }
    ledger = None
    if case == "S04":
        ledger = _ledger(case, level)
        report["ledger"] = ledger
    if presentation is None:
        try:
            presentation, assign = coh.registered_presentation(case, level)
        except ValueError:
            presentation = None
    if presentation is None:
        report["h1"] = None
        report["verdict"] = "INCONCLUSIVE (no presentation available)"
        return report
    h1 = coh.h1_presented(presentation, coh.ad_module(r, assign))
    report["h1"] = h1.to_json()
    if h1.h1 == 0:
        report["verdict"] = "RIGID (certified)"
    elif h1.complete and ledger is not None and ledger["h1"] > 0:
        report["verdict"] = "NON-RIGID indication (ledger positive and relator step exhausted)"
    else:
        report["verdict"] = "INCONCLUSIVE (H1 upper bound > 0)"
    return report


def cmd_rigidity(args) -> int:
    p = coh.Presentation.from_json(_load_json(args.presentation)) if args.presentation else None
    assign = _assign_arg(args.assign) if args.assign else None
    if p is not None and assign is None:
        assign = {g: g for g in p.generators}
    report = rigidity_report(args.case, args.level, p, assign)
    h1 = report["h1"]["h1"] if report["h1"] else None
    lines = [f"{args.case} level {args.level}: {report['verdict']}"]
    if "ledger" in report:
        lines.append(f"ledger value {report['ledger']['h1']}")
    lines.append(f"H1 = {h1}")
    _emit(args, report, "\n".join(lines))
    return EXIT_OK if report["verdict"].startswith("RIGID") else EXIT_INCONCLUSIVE


def _lagrangian_arg(text: str) -> pants.Lagrangian:
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        data = _load_json(text)
    try:
        return pants.Lagrangian([[Fraction(x) for x in row] for row in data])
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad Lagrangian {text!r}: {exc}") from exc


def cmd_maslov(args) -> int:
    Ls = [_lagrangian_arg(t) for t in (args.l0, args.l1, args.l2)]
    mu = pants.maslov(*Ls)
    _emit(args, {"maslov": mu}, str(mu))
    return EXIT_OK


def selftest(level: int = 5) -> dict:
    """Fast exact checks of the structural invariants."""
    results = {}
    props = fusion.check_properties(level)
    results["properties"] = props["I"] and props["II"] and props["III"]
    S = fusion.s_matrix(level)
    results["s_squared_scalar"] = (S @ S).scalar_value() is not None
    for case in CASES:
        r = rep.build_case(case, level)
        results[f"{case}_irreducible"] = rep.commutant_dim(r) == 1
    G, curves = rep.s04_curves(level)
    prod = rep.twist_along(G, curves["a"]) @ rep.twist_along(G, curves["b"]) @ rep.twist_along(G, curves["c"])
    results["lantern"] = prod.scalar_value() is not None
    p, assign = coh.registered_presentation("S04", level)
    h = coh.h1_presented(p, coh.ad_module(rep.build_case("S04", level), assign))
    results["b1_two_ways"] = h.b1 == h.b1_from_invariants
    r = rep.build_case("S04", level)
    results["rep_roundtrip"] = rep.Rep.from_json(json.loads(json.dumps(r.to_json()))).generators == r.generators
    return results


def cmd_selftest(args) -> int:
    res = selftest(args.level)
    ok = all(res.values())
    _emit(args, {"results": res, "ok": ok}, "\n".join(f"{'PASS' if v else 'FAIL'} {k}" for k, v in res.items()))
    return EXIT_OK if ok else EXIT_INCONCLUSIVE


def cmd_export(args) -> int:
    if args.kind == "rep":
        payload = rep.build_case(args.case, args.level).to_json()
    elif args.kind == "graph":
        b = _colors_arg(args.boundary, args.level)
        payload = pants.standard_graph(args.genus, len(b), b, args.level).to_json()
    elif args.kind == "presentation":
        payload = coh.registered_presentation(args.case, args.level)[0].to_json()
    else:
        payload = fusion.s_matrix(args.level, 0).to_json()
    if args.out:
        Path(args.out).write_text(_dumps(payload) + "\n")
    else:
        print(_dumps(payload))
    return EXIT_OK


def load_artifact(data: dict):
    """Recognize and parse any serialized object."""
    if not isinstance(data, dict):
        raise InputError("artifact must be a JSON object")
    if "generators" in data and isinstance(data["generators"], dict):
        return "rep", rep.Rep.from_json(data)
    if "relators" in data:
        return "presentation", coh.Presentation.from_json(data)
    if "iota" in data:
        return "graph", pants.TrivalentGraph.from_json(data)
    if "entries" in data:
        return "matrix", CMatrix.from_json(data)
    raise InputError("unrecognized artifact")


def cmd_import(args) -> int:
    data = _load_json(args.file)
    kind, obj = load_artifact(data)
    again = obj.to_json()
    same = _digest(again) == _digest(load_artifact(again)[1].to_json())
    summary = {"kind": kind, "roundtrip": same, "hash": _digest(again)}
    if kind == "rep":
        summary["dim"] = obj.dim
    _emit(args, summary, f"{kind} ok" + (f", dimension {obj.dim}" if kind == "rep" else ""))
    return EXIT_OK if same else EXIT_INPUT


# -- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-l", "--level", type=int, default=5)
    common.add_argument("--json", action="store_true", help="print JSON instead of text")
    common.add_argument("--out", help="also write the JSON payload to this file")

    parser = _Parser(prog="so3rigid", description="SO(3) quantum representations and their rigidity")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def surface(p):
        p.add_argument("-g", "--genus", type=int, default=0)
        p.add_argument("-b", "--boundary", default="", help="comma-separated boundary colors")

    p = sub.add_parser("dim", parents=[common], help="dimension of a conformal block")
    surface(p)
    p.set_defaults(func=cmd_dim)
    p = sub.add_parser("colorings", parents=[common], help="admissible colorings, lexicographic")
    surface(p)
    p.set_defaults(func=cmd_colorings)
    p = sub.add_parser("props", parents=[common], help="fusion properties (I), (II), (III)")
    p.set_defaults(func=cmd_props)

    p = sub.add_parser("rep", parents=[common], help="build or check a representation")
    p.add_argument("action", choices=["build", "check"])
    p.add_argument("--case", choices=CASES)
    p.add_argument("--rep", help="representation JSON for check")
    p.set_defaults(func=cmd_rep)

    p = sub.add_parser("h1", parents=[common], help="H1 of the adjoint module from a presentation")
    p.add_argument("--presentation", required=True)
    p.add_argument("--rep", required=True)
    p.add_argument("--assign", help="e.g. a=Ta,b=Tb or y='S^-1 T'")
    p.set_defaults(func=cmd_h1)

    p = sub.add_parser("ledger", parents=[common], help="Mayer-Vietoris dimension ledger")
    p.add_argument("--case", required=True, choices=["S04", "S12"])
    p.set_defaults(func=cmd_ledger)

    p = sub.add_parser("rigidity", parents=[common], help="full pipeline for a registered case")
    p.add_argument("--case", required=True)
    p.add_argument("--presentation")
    p.add_argument("--assign")
    p.set_defaults(func=cmd_rigidity)

    p = sub.add_parser("maslov", parents=[common], help="Maslov index of three Lagrangians")
    for name in ("l0", "l1", "l2"):
        p.add_argument(f"--{name}", required=True, help="2g x g matrix as JSON, or a JSON file")
    p.set_defaults(func=cmd_maslov)

    p = sub.add_parser("selftest", parents=[common], help="run quick exact invariant checks")
    p.set_defaults(func=cmd_selftest)

    p = sub.add_parser("export", parents=[common], help="write a JSON artifact")
    p.add_argument("kind", choices=["rep", "graph", "presentation", "smatrix"])
    p.add_argument("--case", default="S04")
    surface(p)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("import", parents=[common], help="validate a JSON artifact")
    p.add_argument("file")
    p.set_defaults(func=cmd_import)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
