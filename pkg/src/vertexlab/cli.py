"""Command-line front end.

Every subcommand prints to stdout (JSON or plain text, both byte
deterministic for fixed flags) and reserves stderr for diagnostics.
Exit codes: 0 on success, 1 when a check suite fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import checks
from .charlab import Character
from .cy_vertex import (
    Chamber,
    cy_vertex_mirror,
    cy_vertex_topological,
    grpp_series,
    rpp_series,
)
from .partitions import check_partition, from_quotient, m_quotient
from .qm_components import (
    CellLabeling,
    HookLabeling,
    degrees,
    enumerate_components,
    enumerate_components_orbifold,
    fixed_term_dim,
    to_curve_class,
    tvir_quasimap,
)
from .quiver_geom import (
    m_hook,
    quiver_data_orbifold,
    quiver_data_resolved,
    tangent_quiver,
)

SCHEMA = "vertexlab/1"


class UsageError(Exception):
    pass


def _parse_legs(raw: str, m: int):
    """Decode the --legs JSON.

    A list of m lists selects the resolved target with one leg per chart;
    a single shape (either ``[[...]]`` or a bare list of ints) selects the
    orbifold target.  Returns ("resolved", legs) or ("orbifold", shape).
    """
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed --legs JSON: {exc}") from None
    if not isinstance(data, list):
        raise UsageError("--legs must be a JSON list")
    if data and all(isinstance(x, int) for x in data):
        data = [data]
    shapes = []
    for entry in data:
        if not isinstance(entry, list) or not all(isinstance(x, int) for x in entry):
            raise UsageError("--legs entries must be lists of integers")
        shape = tuple(entry)
        try:
            check_partition(shape)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        shapes.append(shape)
    if len(shapes) == m:
        return "resolved", tuple(shapes)
    if len(shapes) == 1:
        return "orbifold", shapes[0]
    raise UsageError(
        f"--legs needs {m} shapes for the resolved target or one shape "
        f"for the orbifold target, got {len(shapes)}"
    )


def _coeff_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _series_text(series) -> str:
    parts = []
    for vec, c in series.terms():
        mono = "*".join(
            (v if e == 1 else f"{v}^{e}")
            for v, e in zip(series.svars, vec)
            if e
        )
        if not mono:
            parts.append(_coeff_str(c))
        elif c == 1:
            parts.append(mono)
        else:
            parts.append(f"{_coeff_str(c)}*{mono}")
    return " + ".join(parts) if parts else "0"


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    if args.format == "json":
        payload = {"schema": SCHEMA, **payload}
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write("\n".join(text_lines) + "\n")


def _character_payload(t: Character) -> dict:
    return {"rank": t.rank(), "character": t.to_json()}


def _cmd_tangent(args) -> int:
    target, shapes = _parse_legs(args.legs, args.m)
    if target == "resolved":
        qd = quiver_data_resolved(shapes, args.m)
        legs_json = [list(p) for p in shapes]
    else:
        qd = quiver_data_orbifold(shapes, args.m)
        legs_json = [list(shapes)]
    t = tangent_quiver(qd)
    payload = {"command": "tangent", "target": target, "m": args.m,
               "legs": legs_json, **_character_payload(t)}
    lines = [f"target: {target} (m={args.m})", f"rank: {t.rank()}", f"tangent: {t!r}"]
    _emit(args, payload, lines)
    return 0


def _cmd_mhook(args) -> int:
    charts = [args.chart] if args.chart is not None else list(range(args.m))
    for a in charts:
        if not 0 <= a < args.m:
            raise UsageError(f"--chart {a} out of range for m={args.m}")
    hooks = {a: m_hook(a, args.m) for a in charts}
    payload = {
        "command": "mhook",
        "m": args.m,
        "hooks": [{"chart": a, **_character_payload(hooks[a])} for a in charts],
    }
    lines = [f"chart {a}: {hooks[a]!r}" for a in charts]
    _emit(args, payload, lines)
    return 0


def _single_shape(target, shapes):
    if target == "orbifold":
        return shapes
    if len(shapes) == 1:
        return shapes[0]
    raise UsageError("expected a single shape in --legs")


def _cmd_quotient(args) -> int:
    target, shapes = _parse_legs(args.legs, args.m)
    shape = _single_shape(target, shapes)
    core, quot = m_quotient(shape, args.m)
    assert from_quotient(core, quot, args.m) == shape
    payload = {
        "command": "quotient",
        "m": args.m,
        "shape": list(shape),
        "core": list(core),
        "quotient": [list(p) for p in quot],
    }
    lines = [
        f"shape: {list(shape)}",
        f"{args.m}-core: {list(core)}",
        f"{args.m}-quotient: {[list(p) for p in quot]}",
    ]
    _emit(args, payload, lines)
    return 0


def _component_row(target: str, lab) -> dict:
    n, beta = to_curve_class(lab)
    return {
        "target": target,
        "labels": lab.to_json(),
        "degree": list(degrees(lab)),
        "curve_class": {"n": n, "beta": list(beta)},
        "vdim": fixed_term_dim(lab),
    }


def _cmd_components(args) -> int:
    target, shapes = _parse_legs(args.legs, args.m)
    if target == "resolved":
        labs = enumerate_components(shapes, args.bound)
    else:
        labs = enumerate_components_orbifold(shapes, args.m, args.bound)
    payload = {
        "command": "components",
        "m": args.m,
        "bound": args.bound,
        "count": len(labs),
        "components": [_component_row(target, lab) for lab in labs],
    }
    lines = [f"{len(labs)} stable components (window +/-{args.bound})"]
    for lab in labs:
        n, beta = to_curve_class(lab)
        lines.append(
            f"  labels={list(lab.flat_labels())} curve=(n={n}, beta={list(beta)})"
            f" vdim={fixed_term_dim(lab)}"
        )
    _emit(args, payload, lines)
    return 0


def _parse_labeling(args, target, shapes):
    try:
        data = json.loads(args.labels)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed --labels JSON: {exc}") from None
    if target == "resolved":
        probe = HookLabeling.zero(args.m, shapes)
        anchors = probe.anchors()
        if (
            not isinstance(data, list)
            or len(data) != len(anchors)
            or not all(isinstance(v, list) and len(v) == args.m for v in data)
        ):
            raise UsageError(
                f"--labels needs {len(anchors)} vectors of {args.m} integers, "
                "one per anchor in sorted (leg, row, column) order"
            )
        labels = {key: tuple(vec) for key, vec in zip(anchors, data)}
        return HookLabeling(args.m, shapes, labels)
    probe = CellLabeling.zero(args.m, shapes)
    cells = [(i, j) for (i, j), _ in probe.global_boxes()]
    if not isinstance(data, list) or len(data) != len(cells) or not all(
        isinstance(v, int) for v in data
    ):
        raise UsageError(
            f"--labels needs {len(cells)} integers, one per cell in sorted "
            "(row, column) order"
        )
    return CellLabeling(args.m, shapes, dict(zip(cells, data)))


def _cmd_tvir(args) -> int:
    target, shapes = _parse_legs(args.legs, args.m)
    lab = _parse_labeling(args, target, shapes)
    t = tvir_quasimap(lab)
    payload = {
        "command": "tvir",
        "target": target,
        "m": args.m,
        "labels": lab.to_json(),
        "fixed_dim": fixed_term_dim(lab),
        **_character_payload(t),
    }
    lines = [
        f"target: {target} (m={args.m})",
        f"fixed component dimension: {fixed_term_dim(lab)}",
        f"tvir: {t!r}",
    ]
    _emit(args, payload, lines)
    return 0


def _cmd_cy_vertex(args) -> int:
    target, shapes = _parse_legs(args.legs, args.m)
    if args.variant == "topological":
        if target != "resolved":
            raise UsageError("cy-vertex topological expects m legs")
        series = cy_vertex_topological(shapes, args.order)
    elif args.variant == "grpp":
        if target != "resolved":
            raise UsageError("cy-vertex grpp expects m legs")
        series = grpp_series(shapes, args.order)
    elif args.variant == "mirror":
        if target != "resolved":
            raise UsageError("cy-vertex mirror expects m legs")
        chamber = (
            Chamber.resolved(args.m)
            if args.chamber == "resolved"
            else Chamber.orbifold(args.m)
        )
        series = cy_vertex_mirror(shapes, chamber, args.order)
    else:
        shape = _single_shape(target, shapes)
        series = rpp_series(shape, args.m, args.order)
    payload = {
        "command": f"cy-vertex {args.variant}",
        "m": args.m,
        "order": args.order,
        "vars": list(series.svars),
        "series": series.to_json(),
    }
    _emit(args, payload, [_series_text(series)])
    return 0


# check-suite selector -> (suite names, keyword builder); the builders map
# the generic CLI bounds onto each suite's own scale parameters
def _check_plan(args):
    ms = (args.m,) if args.m is not None else None
    plans = {
        "correspondence": [
            ("tvir-correspondence", checks.check_tvir_correspondence),
            ("stability-correspondence", checks.check_stability_correspondence),
            ("curve-class-translation", checks.check_curve_class_translation),
        ],
        "gansner": [("gansner", checks.check_gansner)],
        "crc": [("crepant-resolution", checks.check_crc)],
    }
    if args.suite == "all":
        return [(name, fn, {}) for name, fn in checks.SUITES.items()]
    out = []
    for name, fn in plans[args.suite]:
        kw = {}
        if name in ("tvir-correspondence", "stability-correspondence",
                    "curve-class-translation"):
            if ms is not None:
                kw["ms"] = ms
            if args.bound is not None:
                kw["size"] = args.bound
                kw["window"] = args.bound
        elif name == "gansner":
            if args.bound is not None:
                kw["size"] = args.bound
            if args.order is not None:
                kw["order"] = args.order
        elif name == "crepant-resolution":
            if ms is not None:
                kw["ms"] = ms
            if args.bound is not None:
                kw["size"] = args.bound
            if args.order is not None:
                kw["order"] = args.order
        out.append((name, fn, kw))
    return out


def _cmd_check(args) -> int:
    results = [fn(**kw) for _, fn, kw in _check_plan(args)]
    ok = all(r.ok for r in results)
    payload = {
        "command": f"check {args.suite}",
        "ok": ok,
        "results": [
            {"name": r.name, "ok": r.ok, "cases": r.cases, "detail": r.detail}
            for r in results
        ],
    }
    _emit(args, payload, [r.line() for r in results])
    return 0 if ok else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vertexlab",
        description="Fixed-point combinatorics and CY vertex series for "
        "cyclic-quiver targets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, legs=True, bound=False, order=False, labels=False):
        p.add_argument("-m", type=int, required=True, help="cyclic group order")
        if legs:
            p.add_argument("--legs", required=True, help="JSON list of shapes")
        if bound:
            p.add_argument("--bound", type=int, required=True,
                           help="label window half-width")
        if order:
            p.add_argument("--order", type=int, required=True,
                           help="series truncation order")
        if labels:
            p.add_argument("--labels", required=True,
                           help="JSON labeling, one entry per anchor/cell")
        p.add_argument("--format", choices=("json", "text"), default="text")

    p = sub.add_parser("tangent", help="tangent character of the fixed point")
    common(p)
    p.set_defaults(fn=_cmd_tangent)

    p = sub.add_parser("mhook", help="length-m hook characters per chart")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--chart", type=int, default=None)
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(fn=_cmd_mhook)

    p = sub.add_parser("quotient", help="m-core and m-quotient of a shape")
    common(p)
    p.set_defaults(fn=_cmd_quotient)

    p = sub.add_parser("components", help="stable fixed components in a window")
    common(p, bound=True)
    p.set_defaults(fn=_cmd_components)

    p = sub.add_parser("tvir", help="virtual tangent character of a component")
    common(p, labels=True)
    p.set_defaults(fn=_cmd_tvir)

    p = sub.add_parser("cy-vertex", help="CY-limit vertex series")
    p.add_argument("variant", choices=("topological", "mirror", "rpp", "grpp"))
    p.add_argument("--chamber", choices=("resolved", "orbifold"),
                   default="resolved", help="mirror chamber (mirror variant)")
    common(p, order=True)
    p.set_defaults(fn=_cmd_cy_vertex)

    p = sub.add_parser("check", help="consistency sweeps")
    p.add_argument("suite", choices=("correspondence", "crc", "gansner", "all"))
    p.add_argument("-m", type=int, default=None,
                   help="restrict the sweep to one m")
    p.add_argument("--bound", type=int, default=None)
    p.add_argument("--order", type=int, default=None)
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(fn=_cmd_check)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "m", None) is not None and args.m < 1:
        print("error: -m must be at least 1", file=sys.stderr)
        return 2
    if getattr(args, "order", None) is not None and args.order < 0:
        print("error: --order must be nonnegative", file=sys.stderr)
        return 2
    if getattr(args, "bound", None) is not None and args.bound < 0:
        print("error: --bound must be nonnegative", file=sys.stderr)
        return 2
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
