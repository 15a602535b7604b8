"""Run configuration shared by the command-line front end and report writers."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, fields

from .chaos import CD_SAMPLES, EPS_DEC
from .extrema import CIRCLE_SAMPLES
from .hardy import DEFAULT_N
from .operators import RANK_TOL
from .roots import EPS_BOUNDARY

FORMATS = ("json", "csv", "pgm")


@dataclass(frozen=True)
class RunConfig:
    trunc: int = DEFAULT_N
    eps_boundary: float = EPS_BOUNDARY
    eps_decision: float = EPS_DEC
    rank_tol: float = RANK_TOL
    circle_samples: int = CIRCLE_SAMPLES
    box: tuple = (-3.0, 3.0, -3.0, 3.0)
    step: float = 0.05
    horizon: int = 4096
    samples: int = CD_SAMPLES
    format: str = "json"
    out: str | None = None
    seed: int = 0

    def __post_init__(self):
        for name in ("eps_boundary", "eps_decision", "rank_tol", "step"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        for name in ("trunc", "circle_samples", "horizon", "samples"):
            if int(getattr(self, name)) < 1:
                raise ValueError(f"{name} must be >= 1")
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}")
        if len(self.box) != 4:
            raise ValueError("box needs four numbers (re_lo, re_hi, im_lo, im_hi)")
        object.__setattr__(self, "box", tuple(float(b) for b in self.box))

    def to_dict(self):
        d = asdict(self)
        d["box"] = list(self.box)
        return d

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def field_names(cls):
        return [f.name for f in fields(cls)]
