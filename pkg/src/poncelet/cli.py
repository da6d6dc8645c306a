"""Command line interface: ``poncelet <command> ...``.

Exit status is 0 on success (including "never closes" answers), 1 when a
computation fails and 2 on usage errors.  The default closure tolerance
can be overridden with the ``PONCELET_CLOSURE_TOL`` environment variable.
"""

from __future__ import annotations

import argparse
import dataclasses
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Optional, Sequence

import numpy as np

from . import closure, oracle
from .chain import (
    ChainConfig,
    ChainResult,
    SingularCircumscribed,
    SingularInscribed,
    SmoothSmooth,
    admissible_starts,
    run_chain,
)
from .errors import NoneExists, PonceletError
from .export import chain_to_csv
from .pencil import (
    classify_pair,
    normalize_both_singular,
    normalize_singular_circumscribed,
    normalize_singular_inscribed,
    normalize_tangent_pair,
    pencil_spectrum,
    tangent_normal_form_matrices,
)
from .projective import Conic, ProjPoint
from .render import render_document
from .scenario_io import ScenarioDocument, load_scenario


def _g(x) -> str:
    if isinstance(x, complex):
        if abs(x.imag) < 1e-15:
            return _g(x.real)
        return f"{x.real:.6g}{x.imag:+.6g}j"
    s = f"{x:.6g}"
    return "0" if s == "-0" else s


def _pt(p: ProjPoint) -> str:
    if p.is_finite:
        return "({}, {})".format(*map(_g, p.xy()))
    return "[{}:{}:{}]".format(*map(_g, p.coords))


def _floats(text: str, n: tuple[int, ...], what: str) -> list[float]:
    try:
        vals = [float(t) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"{what}: expected comma-separated numbers") from None
    if len(vals) not in n:
        raise argparse.ArgumentTypeError(f"{what}: expected {' or '.join(map(str, n))} numbers")
    return vals


def _start_arg(text: str) -> ProjPoint:
    vals = _floats(text, (2, 3), "start")
    return ProjPoint.affine(*vals) if len(vals) == 2 else ProjPoint(vals)


def _viewbox_arg(text: str) -> tuple[float, ...]:
    return tuple(_floats(text, (4,), "viewbox"))


def _config(doc: ScenarioDocument, args) -> ChainConfig:
    cfg = doc.config
    if getattr(args, "max_steps", None) is not None:
        cfg = dataclasses.replace(cfg, max_steps=args.max_steps)
    return cfg


def _start(doc: ScenarioDocument, args, cfg: ChainConfig) -> ProjPoint:
    if getattr(args, "start", None) is not None:
        return args.start
    if doc.start is not None:
        return doc.start
    starts = admissible_starts(doc.scenario, 1, cfg.seed)
    if not starts:
        raise NoneExists("no admissible real start on the inscribed-in locus")
    return starts[0]


# ----------------------------------------------------------------------------
# commands


def cmd_classify(args, out) -> int:
    doc = load_scenario(args.file)
    s = doc.scenario
    print(f"scenario: {s.kind}", file=out)
    if isinstance(s, SmoothSmooth):
        info = classify_pair(s.c, s.gamma)
        print(f"type: {info.tag.value}", file=out)
        print("spectrum: " + ", ".join(f"{_g(r)} (x{k})" for r, k in info.spectrum.roots), file=out)
        for p, k in info.real_base_points:
            print(f"base point: {_pt(p)} order {k}", file=out)
        return 0
    if isinstance(s, SingularInscribed):
        print("type: HasSingularMember (circumscribed member is two points)", file=out)
        print(f"C1: {_pt(s.cstar.c1)}", file=out)
        print(f"C2: {_pt(s.cstar.c2)}", file=out)
        return 0
    print("type: HasSingularMember (inscribed-in member is two lines)", file=out)
    print(f"g1^g2: {_pt(s.gamma_lines.vertex())}", file=out)
    if isinstance(s, SingularCircumscribed):
        spec = pencil_spectrum(s.c, s.gamma_lines.to_conic())
        print("spectrum: " + ", ".join(f"{_g(r)} (x{k})" for r, k in spec.roots), file=out)
    else:
        print(f"C1: {_pt(s.cstar.c1)}", file=out)
        print(f"C2: {_pt(s.cstar.c2)}", file=out)
    return 0


def cmd_normalize(args, out) -> int:
    s = load_scenario(args.file).scenario
    if isinstance(s, SmoothSmooth):
        f = normalize_tangent_pair(s.c, s.gamma)
        print(f"alpha: {_g(f.alpha)}", file=out)
        print(f"beta: {_g(f.beta)}", file=out)
        print(f"gamma: {_g(f.gamma)}", file=out)
        print(f"condition (b): {_g(f.condition_b)}", file=out)
        print(f"contact point: {_pt(f.contact)}", file=out)
    elif isinstance(s, SingularInscribed):
        f = normalize_singular_inscribed(s.gamma, s.cstar)
        print(f"alpha: {_g(f.alpha)}", file=out)
        print(f"theta/pi: {_g(math.atan2(1, f.alpha) / math.pi)}", file=out)
    elif isinstance(s, SingularCircumscribed):
        f = normalize_singular_circumscribed(s.c, s.gamma_lines)
        print(f"alpha: {_g(f.alpha)}", file=out)
        print(f"theta/pi: {_g(math.atan2(1, f.alpha) / math.pi)}", file=out)
    else:
        f = normalize_both_singular(s.gamma_lines, s.cstar)
        print(f"D1: {_pt(f.D1)}", file=out)
        print(f"D2: {_pt(f.D2)}", file=out)
        print(f"cross ratio (C1,C2;D1,D2): {_g(f.cross_ratio)}", file=out)
        print(f"d1: {_g(f.d1)}", file=out)
        print(f"d2: {_g(f.d2)}", file=out)
    return 0


def _summary(result: ChainResult, out) -> None:
    print(f"verdict: {result.verdict}", file=out)
    print(f"vertices: {len(result.vertices)}", file=out)
    print(f"max residual: {_g(result.max_residual)}", file=out)
    for p in result.vertices[:8]:
        print(f"  {_pt(p)}", file=out)
    if len(result.vertices) > 8:
        print(f"  ... {len(result.vertices) - 8} more", file=out)


def cmd_chain(args, out) -> int:
    doc = load_scenario(args.file)
    cfg = _config(doc, args)
    result = run_chain(doc.scenario, _start(doc, args, cfg), cfg, doc.parity)
    _summary(result, out)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            fh.write(chain_to_csv(result))
    return 0


def cmd_check(args, out) -> int:
    doc = load_scenario(args.file)
    s = doc.scenario
    verdict = closure.predict(s, args.n_max)
    line = f"analytic: {verdict}"
    if isinstance(s, SingularCircumscribed):
        literal = closure.dual_literal_prediction(s, args.n_max)
        if literal is not None and literal != verdict:
            print(f"literal dual criterion: {literal}", file=out)
    if not args.verify:
        print(line, file=out)
        return 0
    cfg = _config(doc, args)
    start = args.start if args.start is not None else doc.start
    cc = closure.cross_check(s, start, cfg, args.n_max)
    print(f"{line}; numeric: {cc.numeric_label}; {'AGREE' if cc.agree else 'DISAGREE'}", file=out)
    return 0


def _scan_row(task) -> str:
    a, case, beta, gamma, n_max, max_steps = task
    if case == "tangent":
        C, G = tangent_normal_form_matrices(a, beta, gamma)
        s = SmoothSmooth(Conic(G), Conic(C))
    else:
        s = SingularInscribed(Conic(np.diag([1.0, 1.0, -1.0])), _dual_normal_form(a))
    try:
        cc = closure.cross_check(s, None, ChainConfig(max_steps=max_steps), n_max)
    except PonceletError as exc:
        return f"{_g(a)},error,{type(exc).__name__},"
    return f"{_g(a)},{cc.analytic},{cc.numeric_label.split(':')[0]},{'yes' if cc.agree else 'no'}"


def cmd_scan(args, out) -> int:
    if args.steps < 1:
        raise argparse.ArgumentTypeError("--steps must be positive")
    if args.jobs < 1:
        raise argparse.ArgumentTypeError("--jobs must be positive")
    ChainConfig(max_steps=args.max_steps)  # validate before spawning workers
    tasks = [
        (float(a), args.case, args.beta, args.gamma, args.n_max, args.max_steps)
        for a in np.linspace(args.alpha_min, args.alpha_max, args.steps)
    ]
    print("alpha,analytic,numeric,agree", file=out)
    if args.jobs == 1 or len(tasks) == 1:
        rows = map(_scan_row, tasks)
    else:
        # map keeps the input order, so rows print in alpha order
        pool = ProcessPoolExecutor(max_workers=min(args.jobs, len(tasks)))
        with pool:
            rows = list(pool.map(_scan_row, tasks))
    for row in rows:
        print(row, file=out)
    return 0


def _dual_normal_form(alpha: float):
    from .projective import SingularDualConic

    return SingularDualConic(ProjPoint([1.0, 0.0, 0.0]), ProjPoint([alpha, 1.0, 0.0]))


def cmd_render(args, out) -> int:
    doc = load_scenario(args.file)
    svg, note = render_document(doc, _config(doc, args), args.start, args.viewbox)
    if note:
        print(f"note: {note}", file=out)
    with open(args.out, "wb") as fh:
        fh.write(svg)
    print(f"wrote {args.out}", file=out)
    return 0


def cmd_oracle(args, out) -> int:
    cert = oracle.pell_certificate(args.n)
    print(f"n: {cert.n}", file=out)
    print(f"R ascending coefficients: {', '.join(_g(c) for c in cert.R.coef)}", file=out)
    print(f"S ascending coefficients: {', '.join(_g(c) for c in cert.S.coef)}", file=out)
    print(f"max Pell residual on [-1, 0]: {_g(cert.max_residual)}", file=out)
    print(f"alpha_roots: {', '.join(_g(a) for a in cert.alpha_roots)}", file=out)
    if args.n >= 3:
        b = oracle.alpha_set_bridge(args.n)
        print(f"closure alphas cos^2(pi m/n): {', '.join(_g(a) for a in b.theorem_set)}", file=out)
        print(f"bridge match: {'yes' if b.match else 'no'} (max error {_g(b.max_error)})", file=out)
    return 0


# ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="poncelet", description="Poncelet closure workbench")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="intersection type and pencil spectrum")
    c.add_argument("file")
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("normalize", help="normal-form parameters")
    c.add_argument("file")
    c.set_defaults(func=cmd_normalize)

    c = sub.add_parser("chain", help="run a chain and summarise it")
    c.add_argument("file")
    c.add_argument("--start", type=_start_arg, help="X,Y or X,Y,Z")
    c.add_argument("--max-steps", type=int)
    c.add_argument("--csv", help="write the chain as CSV")
    c.set_defaults(func=cmd_chain)

    c = sub.add_parser("check", help="analytic closure verdict")
    c.add_argument("file")
    c.add_argument("--n-max", type=int, default=closure.N_MAX)
    c.add_argument("--verify", action="store_true", help="compare with a numeric chain")
    c.add_argument("--start", type=_start_arg)
    c.add_argument("--max-steps", type=int)
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("scan", help="analytic vs numeric verdicts over an alpha grid")
    c.add_argument("--case", choices=("tangent", "singular"), default="tangent")
    c.add_argument("--alpha-min", type=float, required=True)
    c.add_argument("--alpha-max", type=float, required=True)
    c.add_argument("--steps", type=int, required=True)
    c.add_argument("--beta", type=float, default=1.0)
    c.add_argument("--gamma", type=float, default=0.0)
    c.add_argument("--n-max", type=int, default=closure.N_MAX)
    c.add_argument("--max-steps", type=int, default=2000)
    c.add_argument("--jobs", type=int, default=os.cpu_count() or 1, help="worker processes")
    c.set_defaults(func=cmd_scan)

    c = sub.add_parser("render", help="write an SVG figure")
    c.add_argument("file")
    c.add_argument("--out", required=True)
    c.add_argument("--viewbox", type=_viewbox_arg, help="XMIN,YMIN,WIDTH,HEIGHT")
    c.add_argument("--start", type=_start_arg)
    c.add_argument("--max-steps", type=int)
    c.set_defaults(func=cmd_render)

    c = sub.add_parser("oracle", help="Pell certificate for degree n")
    c.add_argument("--n", type=int, required=True)
    c.set_defaults(func=cmd_oracle)
    return p


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except argparse.ArgumentTypeError as exc:
        print(f"poncelet: error: {exc}", file=sys.stderr)
        return 2
    except (PonceletError, OSError, ValueError) as exc:
        print(f"poncelet: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
