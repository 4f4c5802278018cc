"""Command-line interface.

Exit status: 0 on success, 1 when a check fails, 2 for usage or file errors.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from . import io
from .alignment import (
    EdgeReversal,
    InvalidScheme,
    NotRealizable,
    SymmetryError,
    apply_reversal,
    check_psi_reflective,
    composite_symmetry,
    generate_from_scheme,
    infer_psi,
    phi_failures,
    random_track,
    reflect_automorphism,
)
from .coxeter import CoxeterParams, InvalidParams
from .dihedral import element_name, format_signs, multiply, parse_element, parse_signs
from .mgon import MGonCategory, count_isomorphism_classes, enumerate_representatives, orbit
from .patch import build_reflective, geodesic_labels, geodesic_through, validate
from .render import RenderStyle, render_svg
from .reversal_closed import (
    BoundExceeded,
    brute_force_maximal,
    enumerate_maximal,
    lift_repeat,
    lift_stretch,
)

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _signs(text: str):
    try:
        return parse_signs(text)
    except ValueError as err:
        raise argparse.ArgumentTypeError(str(err)) from None


def _emit(text: str, out) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_enumerate(args) -> int:
    if args.m < 3:
        raise UsageError(f"--m must be >= 3, got {args.m}")
    reps = enumerate_representatives(args.m)
    lines = [f"m={args.m} classes={count_isomorphism_classes(args.m)}"]
    lines += [f"{c.signs}  orbit={len(orbit(c))}" for c in reps]
    _emit("\n".join(lines) + "\n", None)
    return OK


def _subset_line(g) -> str:
    return "{" + ", ".join(g.names()) + "}"


def _closed_rows(delta, args) -> tuple[list[str], bool]:
    subsets = enumerate_maximal(delta, bound=args.bound)
    rows = [f"{format_signs(delta)}  {len(subsets)} maximal: " + "  ".join(_subset_line(g) for g in subsets)]
    agree = True
    if args.oracle:
        truth = brute_force_maximal(delta)
        agree = {g.elements for g in truth} == {g.elements for g in subsets}
        rows.append("MATCH" if agree else "MISMATCH")
    for k in args.lift_repeat or ():
        rows += [f"  repeat x{k} -> {format_signs(h.delta)}: {_subset_line(h)}" for h in map(lambda g: lift_repeat(g, k), subsets)]
    for k in args.lift_stretch or ():
        rows += [f"  stretch x{k} -> {format_signs(h.delta)}: {_subset_line(h)}" for h in map(lambda g: lift_stretch(g, k), subsets)]
    return rows, agree


def cmd_reversal_closed(args) -> int:
    if (args.delta is None) == (args.m is None):
        raise UsageError("give exactly one of --delta or --m")
    deltas = [args.delta] if args.delta is not None else [c.code for c in enumerate_representatives(args.m)]
    rows, ok = [], True
    try:
        for delta in deltas:
            r, agree = _closed_rows(delta, args)
            rows += r
            ok = ok and agree
    except BoundExceeded as err:
        raise UsageError(str(err)) from None
    _emit("\n".join(rows) + "\n", None)
    return OK if ok else FAILED


def _params(args) -> CoxeterParams:
    try:
        return CoxeterParams(args.m, args.n)
    except InvalidParams as err:
        raise UsageError(str(err)) from None


def cmd_build(args) -> int:
    params = _params(args)
    code = args.code or (1,) * params.m
    if len(code) != params.m:
        raise UsageError(f"--code has length {len(code)}, expected m={params.m}")
    if args.radius < 0:
        raise UsageError("--radius must be >= 0")
    patch = build_reflective(params, MGonCategory(code), args.radius)
    _emit(io.dumps(io.patch_to_doc(patch)), args.out)
    return OK


def cmd_align(args) -> int:
    patch = io.read_patch(args.input)
    if args.scheme:
        scheme = io.read_scheme(args.scheme)
        try:
            sigma0 = parse_element(args.sigma0, patch.m)
            tau = generate_from_scheme(patch, scheme, sigma0)
        except (InvalidScheme, ValueError) as err:
            raise UsageError(str(err)) from None
        target = scheme.target
    elif args.tau is not None:
        if args.target is None:
            raise UsageError("--tau needs --target")
        tau = EdgeReversal.constant(patch, args.tau)
        target = MGonCategory(args.target)
    else:
        raise UsageError("give --scheme or --tau")
    if args.out:
        io.write_reversal(tau, args.out, args.input)
    else:
        sys.stdout.write(io.dumps(io.reversal_to_doc(tau, str(args.input))))
    if args.patch_out:
        try:
            new, chosen = apply_reversal(patch, tau, target)
        except NotRealizable as err:
            print(f"not realizable: {err}", file=sys.stderr)
            return FAILED
        io.write_patch(new, args.patch_out)
        names = sorted({element_name(s) for s in chosen.values()})
        print(f"relabelled {len(chosen)} tiles using {', '.join(names)}", file=sys.stderr)
    return OK


def cmd_verify(args) -> int:
    patch = io.read_patch(args.input)
    report = validate(patch)
    for v in report.violations:
        print(v)
    status = OK if report.ok else FAILED
    if args.reversal:
        tau = io.read_reversal(args.reversal, patch)
        if args.scheme:
            scheme = io.read_scheme(args.scheme)
            bad = phi_failures(patch, tau, scheme)
            for x, i in bad[:20]:
                print(f"phi-generated [tile {x}, side {i}]")
            rng = random.Random(args.seed)
            start = tau.at(patch.base_tile)
            drift = [
                x
                for x in range(len(patch.tiles))
                for _ in range(args.tracks)
                if multiply(start, scheme.phi_of_word(random_track(patch, x, rng))) != tau.at(x)
            ]
            for x in drift[:20]:
                print(f"track-independence [tile {x}]")
            if bad or drift:
                status = FAILED
    print(f"{'OK' if status == OK else 'FAILED'}: {len(report.violations)} patch violations, V-E+F={report.euler}")
    return status


def cmd_reflect(args) -> int:
    patch = io.read_patch(args.input)
    tau = io.read_reversal(args.reversal, patch) if args.reversal else EdgeReversal.identity(patch)
    geodesics = []
    for e in args.edge:
        if not 0 <= e < len(patch.edges):
            raise UsageError(f"edge {e} not in patch")
        g = geodesic_through(patch, e)
        geodesics.append(g)
        try:
            gamma = reflect_automorphism(patch, g)
        except SymmetryError as err:
            print(f"edge {e}: {err}")
            return FAILED
        psi = infer_psi(tau, gamma)
        ok = check_psi_reflective(patch, tau, gamma, psi)
        labels = sorted(set(geodesic_labels(patch, g)))
        print(f"edge {e}: geodesic of {len(g)} edges, labels {labels}, domain {len(gamma)} tiles, "
              f"psi={format_signs(psi)} {'holds' if ok else 'FAILS'}")
        if not ok:
            return FAILED
    if len(geodesics) > 1:
        try:
            psi = composite_symmetry(patch, tau, geodesics)
        except SymmetryError as err:
            print(f"composite: {err}")
            return FAILED
        print(f"composite psi={format_signs(psi)}")
    return OK


def cmd_render(args) -> int:
    patch = io.read_patch(args.input)
    tau = io.read_reversal(args.reversal, patch) if args.reversal else None
    style = RenderStyle.for_patch(patch, show_labels=args.labels, show_ids=args.ids)
    _emit(render_svg(patch, tau, style), args.out)
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dirtile", description="Directed {m,n} tilings and their alignments.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="isomorphism classes of m-gon categories")
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("reversal-closed", help="maximal reversal-closed subsets")
    p.add_argument("--delta", type=_signs)
    p.add_argument("--m", type=int, help="sweep every canonical code of this length")
    p.add_argument("--oracle", action="store_true", help="cross-check against brute force (m <= 8)")
    p.add_argument("--bound", type=int, default=12)
    p.add_argument("--lift-repeat", type=int, action="append", metavar="K")
    p.add_argument("--lift-stretch", type=int, action="append", metavar="K")
    p.set_defaults(func=cmd_reversal_closed)

    p = sub.add_parser("build", help="build a reflective patch")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--code", type=_signs)
    p.add_argument("--radius", type=int, default=2)
    p.add_argument("--out")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("align", help="edge reversal from a scheme or a constant code")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--scheme")
    p.add_argument("--sigma0", default="e")
    p.add_argument("--tau", type=_signs, help="the same tau(x) on every tile")
    p.add_argument("--target", type=_signs)
    p.add_argument("--out")
    p.add_argument("--patch-out", help="also write the re-aligned patch")
    p.set_defaults(func=cmd_align)

    p = sub.add_parser("verify", help="check patch invariants")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--reversal")
    p.add_argument("--scheme")
    p.add_argument("--seed", type=int, default=0, help="seed for the random-track check")
    p.add_argument("--tracks", type=int, default=3, help="random tracks per tile (with --scheme)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reflect", help="reflect across geodesics and report psi")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--reversal")
    p.add_argument("--edge", type=int, action="append", required=True)
    p.set_defaults(func=cmd_reflect)

    p = sub.add_parser("render", help="draw a patch as SVG")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--reversal")
    p.add_argument("--out")
    p.add_argument("--labels", action="store_true")
    p.add_argument("--ids", action="store_true")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, io.SchemaError) as err:
        print(f"error: {err}", file=sys.stderr)
        return USAGE
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
