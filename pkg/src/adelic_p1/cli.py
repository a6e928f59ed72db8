"""Command-line front end.

Exit codes: 0 ok, 1 unreadable or invalid input, 2 domain error, 3 no nef
divisor below the input (empty Upsilon); audit also exits 2 when a check fails.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from . import adelic
from .adelic import EmptyUpsilon
from .exactmath import LogNumber
from .fiber_graph import FiberModel, validate_fiber
from .green_place import parse_point
from .okounkov_volume import chi_volume, concave_transform, volume, volume_limit_check

EXIT_OK, EXIT_PARSE, EXIT_DOMAIN, EXIT_EMPTY = 0, 1, 2, 3


class InputError(Exception):
    pass


def _load(path: str):
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        obj = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    return obj, "sha256:" + hashlib.sha256(raw).hexdigest()[:16]


def _divisor(path: str):
    obj, digest = _load(path)
    try:
        return adelic.from_json(obj), digest
    except (ValueError, TypeError, KeyError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _num(name: str, x: LogNumber) -> list[str]:
    return [f"{name}: {x.render()}", f"{name}_float: {x.render_float(50)}"]


def cmd_height(args) -> int:
    D, digest = _divisor(args.spec)
    try:
        x = parse_point(args.point)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"not a rational point: {args.point!r}") from None
    h = adelic.height(D, x)
    _emit(["command: height", f"input: {digest}", f"point: {args.point}", *_num("height", h)])
    return EXIT_OK


def cmd_intersect(args) -> int:
    D1, d1 = _divisor(args.spec)
    D2, d2 = _divisor(args.spec2 or args.spec)
    v = adelic.global_intersection(D1, D2)
    _emit(["command: intersect", f"input: {d1} {d2}", *_num("degree", v)])
    return EXIT_OK


def cmd_volume(args) -> int:
    D, digest = _divisor(args.spec)
    lines = ["command: volume", f"input: {digest}"]
    lines += _num("vol", volume(D)) + _num("vol_chi", chi_volume(D))
    if args.mmax:
        rep = volume_limit_check(D, args.mmax)
        lines.append("m\tlower\tupper\t2*mid/m^2\tmethod")
        for m, lo, hi, rl, ru, method in rep.rows:
            lines.append(f"{m}\t{lo}\t{hi}\t{(rl + ru) / 2:.12f}\t{method}")
        for a, ok in rep.homogeneity.items():
            lines.append(f"homogeneity a={a}: {'PASS' if ok else 'FAIL'}")
    if args.svg:
        plot_transform(D, args.svg)
        lines.append(f"svg: {args.svg}")
    _emit(lines)
    return EXIT_OK


def plot_transform(D, path: str) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    ct = concave_transform(D)
    pts = ct.float_points()
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.plot([x for x, _ in pts], [y for _, y in pts], marker="o")
    ax.axhline(0, color="grey", linewidth=0.8)
    ax.set_xlabel("x")
    ax.set_ylabel("G(x)")
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)


def _write_pair(out: str | None, tag: str, Qd, N) -> list[str]:
    if out:
        qp, np_ = f"{out}.Q.json", f"{out}.N.json"
        Path(qp).write_text(adelic.serialize(Qd))
        Path(np_).write_text(adelic.serialize(N))
        return [f"{tag}_positive: {qp}", f"{tag}_negative: {np_}", f"negative_is_zero: {N.is_zero()}"]
    return [json.dumps({"Q": adelic.to_json(Qd), "N": adelic.to_json(N)}, indent=2, ensure_ascii=False)]


def cmd_zariski(args) -> int:
    D, digest = _divisor(args.spec)
    res = adelic.zariski_decomposition(D)
    Qd, N = res
    lines = ["command: zariski", f"input: {digest}"]
    lines += [f"mu_0: {adelic.fmt_q(N.coeff(0))}", f"mu_inf: {adelic.fmt_q(N.coeff('inf'))}"]
    lines += _num("vol", volume(Qd))
    lines += _write_pair(args.out, "zariski", Qd, N)
    _emit(lines)
    return EXIT_OK


def cmd_zariski_local(args) -> int:
    D, digest = _divisor(args.spec)
    Qd, N = adelic.relative_zariski(D)
    lines = ["command: zariski-local", f"input: {digest}"]
    lines += _write_pair(args.out, "relative", Qd, N)
    _emit(lines)
    return EXIT_OK


def _check(name: str, lhs: LogNumber, rhs: LogNumber) -> tuple[bool, str]:
    ok = lhs == rhs
    return ok, f"{name}: {'PASS' if ok else 'FAIL'} ({lhs.render()} = {rhs.render()})"


def cmd_audit(args) -> int:
    D, digest = _divisor(args.spec)
    lines = ["command: audit", f"input: {digest}"]
    results = []
    if adelic.is_relatively_nef(D):
        d2 = adelic.global_intersection(D, D)
        results.append(_check("hodge", d2, chi_volume(D)))
        if adelic.is_nef(D):
            results.append(_check("nef_volume", d2, volume(D)))
    else:
        lines.append("hodge: SKIP (not relatively nef)")
    try:
        Qd, N = adelic.zariski_decomposition(D)
        results.append(_check("perpendicular", adelic.global_intersection(Qd, N), LogNumber()))
        results.append(_check("volume_preserved", volume(Qd), volume(D)))
    except EmptyUpsilon:
        lines.append("zariski: SKIP (no nef divisor below)")
    lines += [msg for _, msg in results]
    _emit(lines)
    return EXIT_OK if all(ok for ok, _ in results) else EXIT_DOMAIN


def cmd_validate(args) -> int:
    obj, digest = _load(args.spec)
    lines = ["command: validate", f"input: {digest}"]
    try:
        if isinstance(obj, dict) and "mult" in obj:
            fibers = [FiberModel.from_json(obj)]
        else:
            D = adelic.from_json(obj)
            fibers = [g.model for _, g in D.greens]
            lines.append("divisor: PASS")
    except (ValueError, TypeError, KeyError) as exc:
        raise InputError(f"{args.spec}: {exc}") from None
    ok = True
    for m in fibers:
        rep = validate_fiber(m)
        ok &= rep.ok
        lines += [f"fiber {m.prime} {k}: {'PASS' if v else 'FAIL'}" for k, v in rep.checks.items()]
    _emit(lines)
    return EXIT_OK if ok else EXIT_DOMAIN


def _emit(lines: list[str]) -> None:
    sys.stdout.write("\n".join(lines) + "\n")


COMMANDS = {
    "height": cmd_height,
    "intersect": cmd_intersect,
    "volume": cmd_volume,
    "zariski": cmd_zariski,
    "zariski-local": cmd_zariski_local,
    "audit": cmd_audit,
    "validate": cmd_validate,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="adelic-p1", description="Exact arithmetic intersection theory on P^1 over Q.")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("--spec", required=True, help="divisor (or fiber) JSON file")
    ap.add_argument("--spec2", help="second divisor for intersect")
    ap.add_argument("--point", help="rational point such as 2/3, 0 or inf")
    ap.add_argument("--mmax", type=int, default=0, help="levels for the small-section count")
    ap.add_argument("--out", help="path prefix for decomposition output files")
    ap.add_argument("--svg", help="write a plot of the concave transform")
    return ap


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # argparse uses 2 for usage errors; ours is 1
        return EXIT_PARSE if exc.code else EXIT_OK
    if args.command == "height" and not args.point:
        print("error: height needs --point", file=sys.stderr)
        return EXIT_PARSE
    try:
        return COMMANDS[args.command](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except EmptyUpsilon as exc:
        print(f"empty: {exc}", file=sys.stderr)
        return EXIT_EMPTY
    except (ValueError, ArithmeticError) as exc:
        print(f"domain error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
