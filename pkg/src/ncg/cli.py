"""``ncg`` command line: list and run scenarios, or query a single connection.

Exit codes: 0 when every executed check passes, 1 on any failing check,
2 on usage or configuration errors.
"""

from __future__ import annotations

import argparse
import ast
import json
import sys
from typing import Sequence

from .scenarios import UnknownParameter, UnknownScenario, list_scenarios, run_scenario

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# generator symbols accepted on the command line and the field each one lives in
FIELD_SYMBOLS = {"omega": "Q(omega)", "i": "Q(i)", "sqrt3": "Q(sqrt3)"}
OPS = ("curvature", "torsion", "sigma", "extendability", "metric_compat", "cotorsion", "bianchi")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse exits with 2 as well; raise so main() owns the exit
        raise UsageError(message)


def _parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ncg", description="Exact checks of connections, curvature and traces.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--json", action="store_true", help="emit JSON instead of text")
        sp.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
        sp.add_argument("--no-timing", action="store_true", help="omit timings so reruns are byte-identical")

    sub.add_parser("list", help="print scenario ids")

    r = sub.add_parser("run", help="run scenarios (all when none are named)")
    r.add_argument("ids", nargs="*", metavar="ID")
    r.add_argument("--seed", default="0", help="unsigned 64-bit seed")
    r.add_argument("--params", default="", help="k=v[,k=v...] overriding declared scenario parameters")
    common(r)

    c = sub.add_parser("check", help="evaluate operations on one connection")
    c.add_argument("--backend", required=True, choices=("s3", "bicross"))
    c.add_argument("--params", default="", help="k=v[,k=v...]; unset parameters stay symbolic")
    c.add_argument("--ops", default="curvature,torsion", help=f"comma list from {', '.join(OPS)}")
    c.add_argument("--seed", default="0", help="accepted for symmetry with run; unused")
    common(c)
    return p


def _seed(text: str) -> int:
    try:
        s = int(text)
    except ValueError:
        raise UsageError(f"seed must be an integer, got {text!r}") from None
    if not 0 <= s < 2 ** 64:
        raise UsageError("seed must fit in an unsigned 64-bit integer")
    return s


def parse_params(text: str) -> dict[str, str]:
    out: dict[str, str] = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        if "=" not in item:
            raise UsageError(f"parameter {item!r} is not of the form name=value")
        k, v = (s.strip() for s in item.split("=", 1))
        if not k or not v:
            raise UsageError(f"parameter {item!r} is not of the form name=value")
        if k in out:
            raise UsageError(f"parameter {k!r} given twice")
        out[k] = v
    return out


def _names_in(text: str) -> set[str]:
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError:
        raise UsageError(f"cannot parse value {text!r}") from None
    return {n.id for n in ast.walk(tree) if isinstance(n, ast.Name)}


def field_for(values: dict[str, str], allowed: Sequence[str]) -> str:
    """The single number field needed by the generator symbols in ``values``."""
    fields = set()
    for k, v in values.items():
        for name in _names_in(v):
            if name in FIELD_SYMBOLS:
                fields.add(FIELD_SYMBOLS[name])
            elif name not in allowed:
                raise UsageError(f"unknown symbol {name!r} in {k}={v}")
    if len(fields) > 1:
        raise UsageError(f"values need several field extensions at once: {', '.join(sorted(fields))}")
    return fields.pop() if fields else "QQ"


# ---------------------------------------------------------------------------
# check
# ---------------------------------------------------------------------------

def _s3_setup(values: dict[str, str]):
    from .scenarios.models import S3_PARAMS, s3_point

    for k in values:
        if k not in S3_PARAMS:
            raise UsageError(f"s3 has parameters {', '.join(S3_PARAMS)}; got {k!r}")
    field = field_for(values, S3_PARAMS)
    free = [n for n in S3_PARAMS if n not in values]
    try:
        model, vals = s3_point(field, values, free)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(str(exc)) from None
    conn = model.connection(vals)
    return conn, model.euclidean(), field


def _bicross_setup(values: dict[str, str]):
    from .orecalc import PARAMS
    from .scenarios.models import BicrossModel

    names = tuple(PARAMS) + ("lam", "b")
    for k in values:
        if k not in names:
            raise UsageError(f"bicross has parameters {', '.join(names)}; got {k!r}")
    if field_for(values, names) != "QQ":
        raise UsageError("the bicross backend works over the rationals only")
    model = BicrossModel()
    try:
        conn = model.connection(values)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(str(exc)) from None
    return conn, model.metric(conn), "QQ"


def _conditions(residuals, ring):
    from .conncore.equations import EquationSet

    eqs = EquationSet.from_residuals(ring, residuals)
    return eqs.render() or ["none (holds identically)"]


def _evaluate(op: str, conn, metric) -> tuple[dict, bool]:
    """Rendered values for one operation and whether it counts as passing."""
    from .conncore import connections as cx

    calc = conn.calc
    ring = calc.ring
    if op == "curvature":
        R = conn.curvature()
        return {f"R({conn.module.label(i)})": v.render() for i, v in enumerate(R.values)}, True
    if op == "torsion":
        T = cx.torsion(conn)
        return {f"T({conn.module.label(i)})": v.render() for i, v in enumerate(T.values)}, True
    if op == "sigma":
        s = conn.sigma
        if isinstance(s, cx.NotBimodule):
            return {"sigma": f"no bimodule connection: {s.witness}"}, True
        return {"sigma": s.render()}, True
    if op == "extendability":
        s = conn.sigma
        if isinstance(s, cx.NotBimodule):
            return {"extendable": "not a bimodule connection"}, True
        return {"conditions": _conditions([r for _, r in cx.extendability_residuals(s)], ring)}, True
    if op == "metric_compat":
        r = cx.metric_compat_residual(conn, metric)
        return {"residual": r.render(), "conditions": _conditions([r], ring)}, True
    if op == "cotorsion":
        r = cx.cotorsion(conn, metric.as_one_form_tensor())
        return {"cotorsion": r.render()}, True
    if op == "bianchi":
        b = cx.bianchi_residuals(conn)
        out, ok = {}, True
        for name, rs, vac in (("first", b.first, b.first_vacuous), ("second", b.second, b.second_vacuous)):
            if vac:
                out[name] = "vacuous (no degree-3 forms)"
                continue
            bad = [r for r in rs if not r.is_zero()]
            ok = ok and not bad
            out[name] = "0" if not bad else "; ".join(r.render() for r in bad)
        return out, ok
    raise UsageError(f"unknown op {op!r}; choose from {', '.join(OPS)}")


def _check(args) -> tuple[str, int]:
    values = parse_params(args.params)
    ops = [o.strip() for o in args.ops.split(",") if o.strip()]
    for o in ops:
        if o not in OPS:
            raise UsageError(f"unknown op {o!r}; choose from {', '.join(OPS)}")
    conn, metric, field = (_s3_setup if args.backend == "s3" else _bicross_setup)(values)
    results, ok = [], True
    for op in ops:
        vals, good = _evaluate(op, conn, metric)
        ok = ok and good
        results.append({"op": op, "status": "pass" if good else "fail", "values": vals})
    if args.json:
        text = json.dumps({"backend": args.backend, "field": field, "params": values, "results": results}, indent=2)
    else:
        lines = [f"backend {args.backend} over {field}; params {', '.join(f'{k}={v}' for k, v in values.items()) or 'all symbolic'}"]
        for r in results:
            lines.append(f"[{r['op']}]")
            for k, v in r["values"].items():
                if isinstance(v, list):
                    lines.extend(f"  {k}: {x}" for x in v)
                else:
                    lines.append(f"  {k} = {v}")
        text = "\n".join(lines)
    return text, EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# run / list
# ---------------------------------------------------------------------------

def _run(args) -> tuple[str, int]:
    seed = _seed(args.seed)
    known = list_scenarios()
    ids = sorted(set(args.ids)) if args.ids else known
    for i in ids:
        if i not in known:
            raise UsageError(f"unknown scenario {i!r}")
    overrides = parse_params(args.params)
    reports = []
    for i in ids:
        try:
            reports.append(run_scenario(i, seed, overrides))
        except (UnknownParameter, UnknownScenario, ValueError) as exc:
            raise UsageError(str(exc)) from None
    timing = not args.no_timing
    if args.json:
        payload = reports[0].as_dict(timing) if len(reports) == 1 else [r.as_dict(timing) for r in reports]
        text = json.dumps(payload, indent=2)
    else:
        text = "\n\n".join(r.to_text(timing) for r in reports)
        total = sum(len(r.checks) for r in reports)
        fails = sum(len(r.failures()) for r in reports)
        text += f"\n\n{len(reports)} scenario(s), {total} checks, {fails} failing"
    return text, EXIT_OK if all(r.ok for r in reports) else EXIT_FAIL


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = _parser().parse_args(argv)
        if args.command == "list":
            _emit("\n".join(list_scenarios()), None)
            return EXIT_OK
        text, code = (_run if args.command == "run" else _check)(args)
        _emit(text, args.out)
        return code
    except UsageError as exc:
        sys.stderr.write(f"ncg: error: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        sys.stderr.write(f"ncg: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
