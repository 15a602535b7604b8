"""Scalar-perturbation chaos regions: the set of lambda for which
lambda + phi(T) is chaotic, rasterized on a grid."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass

import numpy as np

from .chaos import EPS_DEC, Tri, Verdict, classify_chaos, decide_intersection
from .extrema import affine_extrema
from .parallel import parallel_map
from .parser import SymbolFamily
from .symbols import Symbol

PGM_LEVELS = {Verdict.CHAOTIC: 255, Verdict.NOT_CHAOTIC: 0, Verdict.INDETERMINATE: 128}
SET_NAMES = ("S_LY", "S_DC", "S_DV", "S_H")


def grid_axis(lo, hi, step):
    """lo + k*step for k < max(1, ceil((hi - lo)/step)), rounded to 12 places."""
    if step <= 0:
        raise ValueError("step must be positive")
    if not (math.isfinite(lo) and math.isfinite(hi)) or hi < lo:
        raise ValueError("box must be bounded with lo <= hi")
    n = max(1, math.ceil((hi - lo) / step - 1e-9))
    return np.round(lo + step * np.arange(n), 12)


def family_symbol(family, lam):
    """Operator-side symbol F(lambda) for the family at lambda."""
    if isinstance(family, Symbol):
        return family + complex(lam)
    return family(lam)


def family_label(family):
    if isinstance(family, Symbol):
        return f"l + phi(T), phi = {family!r}"
    if isinstance(family, SymbolFamily):
        return family.text
    return repr(family)


def classify_operator_symbol(op_symbol, eps_dec=EPS_DEC, **kw):
    """Verdict for the operator op_symbol(T) = M_psi^* with psi the
    coefficient conjugate; affine symbols take the closed-form path."""
    psi = op_symbol.conjugate_coefficients()
    if psi.is_affine:
        a, b = psi.num
        lo, hi = affine_extrema(a, b)
        tri = decide_intersection(lo, hi, 2 * min(abs(a), abs(b)), eps_dec)
        return {Tri.YES: Verdict.CHAOTIC, Tri.NO: Verdict.NOT_CHAOTIC,
                Tri.INDETERMINATE: Verdict.INDETERMINATE}[tri]
    return classify_chaos(psi, eps_dec=eps_dec, **kw).verdict


@dataclass(frozen=True, eq=False)
class RegionRaster:
    family: str
    box: tuple  # (re_lo, re_hi, im_lo, im_hi)
    step: float
    re: np.ndarray
    im: np.ndarray
    cells: tuple  # rows over im ascending, columns over re ascending

    @property
    def shape(self):
        return (len(self.im), len(self.re))

    def codes(self):
        return np.array([[PGM_LEVELS[v] for v in row] for row in self.cells], dtype=np.uint8)

    def at(self, lam, tol=1e-9):
        j = int(np.argmin(np.abs(self.re - lam.real)))
        i = int(np.argmin(np.abs(self.im - lam.imag)))
        if abs(self.re[j] - lam.real) > tol or abs(self.im[i] - lam.imag) > tol:
            raise KeyError(lam)
        return self.cells[i][j]

    def count(self, verdict=Verdict.CHAOTIC):
        return sum(v == verdict for row in self.cells for v in row)

    def to_dict(self, config=None):
        out = {"schema": "hardy-chaos/region-raster/1", "family": self.family,
               "sets": list(SET_NAMES),
               "grid": {"box": list(self.box), "step": self.step,
                        "re": [float(x) for x in self.re], "im": [float(y) for y in self.im]},
               "cells": [[v.value for v in row] for row in self.cells]}
        if config is not None:
            out["config"] = config
        return out

    def to_json(self, config=None):
        return json.dumps(self.to_dict(config), separators=(",", ":")) + "\n"

    def to_csv(self, config=None):
        buf = io.StringIO()
        if config is not None:
            buf.write("# config: " + json.dumps(config, separators=(",", ":")) + "\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["lambda_re", "lambda_im", "verdict"])
        for i, y in enumerate(self.im):
            for j, x in enumerate(self.re):
                w.writerow([repr(float(x)), repr(float(y)), self.cells[i][j].value])
        return buf.getvalue()

    def to_pgm(self, config=None):
        """Binary P5 image, top row = largest Im(lambda)."""
        h, w = self.shape
        head = "P5\n"
        if config is not None:
            head += "# config: " + json.dumps(config, separators=(",", ":")) + "\n"
        head += f"# family: {self.family}\n{w} {h}\n255\n"
        return head.encode() + self.codes()[::-1].tobytes()


def scalar_region_scan(family, box, step, threads=None, eps_dec=EPS_DEC, **kw):
    """Classify lambda + F on a grid over ``box`` = (re_lo, re_hi, im_lo, im_hi).

    ``family`` is a Symbol phi (scanning lambda + phi(T)), a SymbolFamily in
    ``l`` and ``z``, or any callable lambda -> operator-side Symbol.
    """
    if len(box) == 2:
        box = (box[0], box[1], box[0], box[1])
    re_lo, re_hi, im_lo, im_hi = (float(b) for b in box)
    re = grid_axis(re_lo, re_hi, step)
    im = grid_axis(im_lo, im_hi, step)
    points = [complex(x, y) for y in im for x in re]

    def cell(lam):
        return classify_operator_symbol(family_symbol(family, lam), eps_dec=eps_dec, **kw)

    flat = parallel_map(cell, points, threads=threads)
    w = len(re)
    cells = tuple(tuple(flat[i * w:(i + 1) * w]) for i in range(len(im)))
    return RegionRaster(family_label(family), (re_lo, re_hi, im_lo, im_hi), float(step),
                        re, im, cells)
