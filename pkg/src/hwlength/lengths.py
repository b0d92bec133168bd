"""Per-prime D-module and unit F-module lengths of H^1_g(R) for homogeneous g.

For Y = {g = 0} smooth in P^n over F_p and h = dim H^{n-1}(Y, O_Y):

* D-module length      = 1 + stable rank of Frobenius on H^{n-1}(Y, O_Y)
* unit F-module length = 1 + quasilength of the same Frobenius module
* length of N_g in characteristic zero = 1 + h

All results assume good reduction at p in the sense of ``good_reduction_check``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from math import comb
from typing import Any, Dict, List, Optional

from .errors import InvalidInput
from .field import check_prime
from .geometry import good_reduction_check, hasse_witt_matrix
from .groebner import DEFAULT_STEP_CAP
from .mpoly import DEFAULT_MEMORY_BUDGET, MultiPolyZ
from .semilinear import classify, quasilength, stable_rank

REPORT_FIELDS = (
    "prime",
    "status",
    "bad_reason",
    "h",
    "stable_rank",
    "quasilength",
    "d_module_length",
    "unit_f_length",
    "char0_ng_length",
    "class",
    "wall_time_ms",
)


@dataclass
class LengthReport:
    prime: int
    status: str  # "Valid" or "Bad"
    bad_reason: Optional[str] = None
    h: Optional[int] = None
    stable_rank: Optional[int] = None
    quasilength: Optional[int] = None
    d_module_length: Optional[int] = None
    unit_f_length: Optional[int] = None
    char0_ng_length: Optional[int] = None
    classification: Optional[str] = None
    wall_time_ms: float = 0.0
    hasse_witt: Optional[List[List[int]]] = field(default=None, repr=False)

    @property
    def valid(self) -> bool:
        return self.status == "Valid"

    def to_dict(self) -> Dict[str, Any]:
        out = {
            "prime": self.prime,
            "status": self.status,
            "bad_reason": self.bad_reason,
            "h": self.h,
            "stable_rank": self.stable_rank,
            "quasilength": self.quasilength,
            "d_module_length": self.d_module_length,
            "unit_f_length": self.unit_f_length,
            "char0_ng_length": self.char0_ng_length,
            "class": self.classification,
            "wall_time_ms": self.wall_time_ms,
        }
        if self.hasse_witt is not None:
            out["hasse_witt"] = self.hasse_witt
        return out

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "LengthReport":
        return cls(
            prime=data["prime"],
            status=data["status"],
            bad_reason=data.get("bad_reason"),
            h=data.get("h"),
            stable_rank=data.get("stable_rank"),
            quasilength=data.get("quasilength"),
            d_module_length=data.get("d_module_length"),
            unit_f_length=data.get("unit_f_length"),
            char0_ng_length=data.get("char0_ng_length"),
            classification=data.get("class"),
            wall_time_ms=data.get("wall_time_ms", 0.0),
            hasse_witt=data.get("hasse_witt"),
        )


def char0_lengths(n: int, d: int) -> Dict[str, int]:
    """Length of N_g over C for a smooth degree-d hypersurface in P^n."""
    if n < 2 or d < 1:
        raise InvalidInput("char0_lengths needs n >= 2 and d >= 1")
    h = comb(d - 1, n)
    return {"ng_length": 1 + h, "h": h}


def validate_input(g: MultiPolyZ) -> None:
    if not g.terms:
        raise InvalidInput("the zero polynomial has no local cohomology to measure")
    if not g.is_homogeneous():
        raise InvalidInput("only homogeneous polynomials are supported")
    if g.n < 2:
        raise InvalidInput(f"need n >= 2 (at least 3 variables), got {g.nvars} variables")
    if g.degree < 2:
        raise InvalidInput(f"need degree >= 2, got {g.degree}")


def length_at_prime(
    g: MultiPolyZ,
    p: int,
    *,
    emit_matrix: bool = False,
    budget: int = DEFAULT_MEMORY_BUDGET,
    step_cap: int = DEFAULT_STEP_CAP,
    method: str = "auto",
) -> LengthReport:
    validate_input(g)
    check_prime(p)
    start = time.perf_counter()
    verdict = good_reduction_check(g, p, step_cap=step_cap)
    if not verdict.valid:
        return LengthReport(p, "Bad", verdict.reason, wall_time_ms=_ms_since(start))
    H = verdict.hypersurface
    hw = hasse_witt_matrix(H, method=method, budget=budget)
    T = hw.operator
    s, q = stable_rank(T), quasilength(T)
    c0 = char0_lengths(H.n, H.d)
    report = LengthReport(
        prime=p,
        status="Valid",
        h=c0["h"],
        stable_rank=s,
        quasilength=q,
        d_module_length=1 + s,
        unit_f_length=1 + q,
        char0_ng_length=c0["ng_length"],
        classification=str(classify(T)),
        hasse_witt=[list(r) for r in hw.matrix] if emit_matrix else None,
    )
    check_report(report)
    report.wall_time_ms = _ms_since(start)
    return report


def check_report(r: LengthReport) -> None:
    """Internal consistency of a Valid report; raises AssertionError on violation."""
    if not r.valid:
        return
    assert r.h == r.char0_ng_length - 1
    assert r.d_module_length == 1 + r.stable_rank and r.unit_f_length == 1 + r.quasilength
    # q <= s <= h: unit F-length <= D-length <= length of N_g
    assert 1 <= r.unit_f_length <= r.d_module_length <= r.char0_ng_length
    ordinary = r.classification == "Ordinary"
    assert ordinary == (r.d_module_length == r.char0_ng_length)


def _ms_since(start: float) -> float:
    return round((time.perf_counter() - start) * 1000.0, 3)
