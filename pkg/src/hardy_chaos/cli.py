"""Command-line front end: analyze, region, orbit, verify, kernel-dim.

Exit codes: 0 decided / PASS, 2 INDETERMINATE / FAIL, 1 input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import __version__
from .chaos import (Verdict, classify_chaos, is_cowen_douglas_sufficient, shifted_numerator,
                    verify_bn)
from .config import FORMATS, RunConfig
from .errors import HardyChaosError
from .hardy import HardyVec
from .operators import adjoint_mult_operator, singular_values
from .orbits import is_scaled_shift, liyorke_witness, orbit_stats
from .parser import SymbolFamily, parse_complex, parse_symbol
from .region import scalar_region_scan
from .roots import Location, polynomial_roots

EXIT_OK, EXIT_INPUT, EXIT_UNDECIDED = 0, 1, 2
VERIFY_N = 128
_VALUE_OPTS = ("--box", "--mu", "--lambda", "--step")


class InputError(Exception):
    pass


def _dump(obj):
    return json.dumps(obj, indent=2) + "\n"


def _emit(data, cfg, stdout):
    if cfg.out:
        mode = "wb" if isinstance(data, bytes) else "w"
        with open(cfg.out, mode) as fh:
            fh.write(data)
    elif isinstance(data, bytes):
        stdout.buffer.write(data) if hasattr(stdout, "buffer") else stdout.write(data.decode("latin-1"))
    else:
        stdout.write(data)


def _symbol(text, cfg):
    return parse_symbol(text, eps_b=cfg.eps_boundary)


def _box(text):
    parts = [float(p) for p in text.split(",")]
    if len(parts) == 2:
        parts = parts * 2
    if len(parts) != 4:
        raise InputError("--box takes lo,hi or re_lo,re_hi,im_lo,im_hi")
    if not all(np.isfinite(parts)):
        raise InputError("unbounded box rejected")
    return tuple(parts)


def _config(args, **overrides):
    kw = {}
    for name in RunConfig.field_names():
        val = getattr(args, name, None)
        if val is not None:
            kw[name] = val
    kw.update(overrides)
    try:
        return RunConfig(**kw)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def cmd_analyze(args, stdout):
    cfg = _config(args)
    phi = _symbol(args.symbol, cfg)
    rep = classify_chaos(phi, samples=cfg.samples, seed=cfg.seed, eps_dec=cfg.eps_decision,
                         circle_samples=cfg.circle_samples, eps_b=cfg.eps_boundary)
    doc = {"config": cfg.to_dict(), "input": args.symbol, "report": rep.to_dict()}
    _emit(_dump(doc), cfg, stdout)
    return EXIT_OK if rep.decided else EXIT_UNDECIDED


def cmd_region(args, stdout, stderr):
    box = _box(args.box) if args.box else None
    cfg = _config(args, **({"box": box} if box else {}))
    family = SymbolFamily(args.family)
    raster = scalar_region_scan(family, cfg.box, cfg.step, eps_dec=cfg.eps_decision,
                                samples=cfg.samples, seed=cfg.seed,
                                circle_samples=cfg.circle_samples, eps_b=cfg.eps_boundary)
    conf = cfg.to_dict()
    if cfg.format == "json":
        data = raster.to_json(conf)
    elif cfg.format == "csv":
        data = raster.to_csv(conf)
    else:
        data = raster.to_pgm(conf)
    _emit(data, cfg, stdout)
    h, w = raster.shape
    stderr.write(f"region {family.text!r}: {raster.count(Verdict.CHAOTIC)} CHAOTIC, "
                 f"{raster.count(Verdict.INDETERMINATE)} INDETERMINATE of {h * w} cells\n")
    return EXIT_OK


def _vector(text, N):
    if text.startswith("e") and text[1:].isdigit():
        k = int(text[1:])
        if k >= N:
            raise InputError(f"basis index {k} >= truncation {N}")
        return HardyVec.basis(k, N)
    with open(text) as fh:
        v = HardyVec.from_json(fh.read())
    if v.N != N:
        raise InputError(f"vector has length {v.N}, expected {N}")
    return v


def cmd_orbit(args, stdout):
    cfg = _config(args)
    phi = _symbol(args.symbol, cfg)
    if args.witness:
        N = max(cfg.trunc, cfg.horizon) if is_scaled_shift(phi) else cfg.trunc
        if classify_chaos(phi, samples=cfg.samples, seed=cfg.seed,
                          eps_dec=cfg.eps_decision).verdict != Verdict.CHAOTIC:
            raise InputError("witness requested for a symbol that is not chaotic")
        _, st = liyorke_witness(phi, N, cfg.horizon, restarts=args.restarts, seed=cfg.seed,
                                classify=False)
    else:
        N = cfg.trunc
        x = _vector(args.vector or "e0", N)
        st = orbit_stats(adjoint_mult_operator(phi, N), x, cfg.horizon)
    buf = io.StringIO()
    buf.write("# config: " + json.dumps(cfg.to_dict()) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "norm"])
    for n, v in enumerate(st.trace):
        w.writerow([n, repr(float(v))])
    summary = st.summary()
    summary["N"] = N
    summary["witness"] = bool(args.witness)
    buf.write("# stats: " + json.dumps(summary) + "\n")
    _emit(buf.getvalue(), cfg, stdout)
    return EXIT_OK


def cmd_verify(args, stdout):
    # 16 dense SVDs per run: the default truncation drops to VERIFY_N
    cfg = _config(args, **({} if args.trunc else {"trunc": VERIFY_N}))
    phi = _symbol(args.symbol, cfg)
    if phi.is_constant:
        raise InputError("constant symbol rejected: not a Cowen-Douglas function")
    cd = is_cowen_douglas_sufficient(phi, samples=cfg.samples, seed=cfg.seed,
                                     eps_b=cfg.eps_boundary)
    bn = verify_bn(phi, n_samples=args.lambda_samples, N=cfg.trunc, rank_tol=cfg.rank_tol,
                   seed=cfg.seed)
    doc = {"config": cfg.to_dict(), "input": args.symbol,
           "cowen_douglas": cd.to_dict(), "bn": bn.to_dict()}
    _emit(_dump(doc), cfg, stdout)
    return EXIT_OK if bn.verdict == "PASS" else EXIT_UNDECIDED


def cmd_kernel_dim(args, stdout):
    cfg = _config(args)
    phi = _symbol(args.symbol, cfg)
    if args.mu is not None:
        mu = parse_complex(args.mu)
        lam = np.conj(mu)
    elif args.lam is not None:
        lam = parse_complex(args.lam)
        mu = np.conj(lam)
    else:
        raise InputError("one of --mu or --lambda is required")
    A = adjoint_mult_operator(phi, cfg.trunc)
    if args.export_matrix:
        with open(args.export_matrix, "wb") as fh:
            fh.write(A.to_bytes())
    sv = singular_values(A, lam)
    dim = int(np.sum(sv < cfg.rank_tol * sv[0])) if sv[0] > 0 else len(sv)
    if cfg.format == "csv":
        buf = io.StringIO()
        buf.write("# config: " + json.dumps(cfg.to_dict()) + "\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["index", "singular_value"])
        for i, s in enumerate(sv):
            w.writerow([i, repr(float(s))])
        _emit(buf.getvalue(), cfg, stdout)
        return EXIT_OK
    q = shifted_numerator(phi, mu)
    inside = None
    if len(q) > 1:
        inside = polynomial_roots(q, eps_b=cfg.eps_boundary).count(Location.INSIDE)
    doc = {"config": cfg.to_dict(), "input": args.symbol,
           "lambda": [float(np.real(lam)) + 0.0, float(np.imag(lam)) + 0.0], "N": cfg.trunc,
           "kernel_dimension": dim, "inside_root_count": inside,
           "smallest_singular_values": [float(s) for s in sv[-8:][::-1]]}
    _emit(_dump(doc), cfg, stdout)
    return EXIT_OK


def _common(p):
    g = p.add_argument_group("global options")
    g.add_argument("--trunc", type=int, help="truncation order N (default 256)")
    g.add_argument("--tol-boundary", dest="eps_boundary", type=float,
                   help="boundary band around |z| = 1 (default 1e-9)")
    g.add_argument("--tol-decision", dest="eps_decision", type=float,
                   help="decision margin around the unit circle (default 1e-7)")
    g.add_argument("--tol-rank", dest="rank_tol", type=float,
                   help="relative rank threshold (default 1e-8)")
    g.add_argument("--circle-samples", type=int, help="boundary samples for extrema (4096)")
    g.add_argument("--samples", type=int, help="rooter base points per symbol (64)")
    g.add_argument("--horizon", type=int, help="orbit horizon (4096)")
    g.add_argument("--seed", type=int, help="seed for sampled checks and searches (0)")
    g.add_argument("--format", choices=FORMATS, help="output format")
    g.add_argument("--out", help="output path (default stdout)")


def build_parser():
    parser = argparse.ArgumentParser(prog="hardy-chaos", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="classify chaos of M_phi^*")
    p.add_argument("symbol")
    _common(p)

    p = sub.add_parser("region", help="raster of lambda for which the family is chaotic")
    p.add_argument("--family", required=True, help='expression in l and z, e.g. "l + z"')
    p.add_argument("--box", help="lo,hi or re_lo,re_hi,im_lo,im_hi")
    p.add_argument("--step", type=float)
    _common(p)

    p = sub.add_parser("orbit", help="norm trace of an orbit of M_phi^*")
    p.add_argument("symbol")
    p.add_argument("--witness", action="store_true", help="search a Li-Yorke witness vector")
    p.add_argument("--vector", help="e<k> or a JSON HardyVec file")
    p.add_argument("--restarts", type=int, default=200)
    _common(p)

    p = sub.add_parser("verify", help="check the Cowen-Douglas class conditions")
    p.add_argument("symbol")
    p.add_argument("--lambda-samples", type=int, default=16)
    _common(p)

    p = sub.add_parser("kernel-dim", help="numerical dim ker(M_phi^* - lambda)")
    p.add_argument("symbol")
    p.add_argument("--mu", help="point of phi(D); lambda = conj(mu)")
    p.add_argument("--lambda", dest="lam", help="eigenvalue lambda directly")
    p.add_argument("--export-matrix", help="write M_phi^* as header + column-major binary")
    _common(p)
    return parser


def _join_values(argv):
    # lets "--box -3,3" through argparse, which would read -3,3 as an option
    out = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_OPTS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = _join_values(sys.argv[1:] if argv is None else list(argv))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        if args.command == "analyze":
            return cmd_analyze(args, stdout)
        if args.command == "region":
            return cmd_region(args, stdout, stderr)
        if args.command == "orbit":
            return cmd_orbit(args, stdout)
        if args.command == "verify":
            return cmd_verify(args, stdout)
        return cmd_kernel_dim(args, stdout)
    except (InputError, HardyChaosError, ValueError, OSError) as exc:
        stderr.write(f"error: {exc}\n")
        caret = getattr(exc, "caret", None)
        if caret:
            stderr.write(caret() + "\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
