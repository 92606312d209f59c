"""Gap tables for the extremal and coalescence families, limit checks and the diameter bound test."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence

import numpy as np

from .config import Config
from .constructions import (
    FamilySpec,
    extremal_delta3,
    extremal_delta4,
    gap_upper_closed_form,
    h_family,
)
from .errors import InputError
from .graph import Graph, complete_minus_edge, diameter, path_graph
from .spectral import perron, perron_gap

PI2 = math.pi**2


@dataclass
class GapRow:
    delta: int
    n: int
    k: Optional[int]
    delta_min: int
    lambda1: float
    gap: float
    scaled_gap: float
    normalized: float
    target: float
    rel_err: float

    def to_dict(self) -> dict:
        return asdict(self)


def normalizer(delta: int) -> int:
    """Divisor turning ``n²(Δ-λ₁)`` into the normalized gap: ``Δ-1`` for odd Δ, ``Δ-2`` for even."""
    if delta == 2:
        return 1
    return delta - 1 if delta % 2 else delta - 2


def target(delta: int) -> float:
    """Limit of the normalized gap (an upper bound on the lim sup for Δ ≥ 5)."""
    if delta == 2:
        return PI2
    return PI2 / 4 if delta % 2 else PI2 / 2


def family_graph(delta: int, n: int) -> tuple[Graph, Optional[int]]:
    """The graph tabulated for ``(Δ, n)``: a path, an extremal chain, or the coalescence family."""
    if delta == 2:
        return path_graph(n), None
    if delta == 3:
        return extremal_delta3(n), None
    if delta == 4:
        return extremal_delta4(n), None
    if delta < 2:
        raise InputError("delta must be at least 2")
    return h_family(delta, n), FamilySpec.from_order(delta, n).k


def gap_row(delta: int, n: int, tol: float = 1e-13) -> GapRow:
    g, k = family_graph(delta, n)
    pd = perron(g, tol)
    # quadratic form at the Perron vector; avoids cancellation in delta - lambda1
    gap = perron_gap(g, pd, delta)
    scaled = n * n * gap
    norm = scaled / normalizer(delta)
    t = target(delta)
    return GapRow(delta, n, k, g.min_degree(), pd.lambda1, gap, scaled, norm, t, abs(norm - t) / t)


def _row_args(args):
    return gap_row(*args)


def gap_table(delta: int, ns: Sequence[int], tol: float = 1e-13, threads: int = 1) -> list[GapRow]:
    tasks = [(delta, n, tol) for n in ns]
    if threads > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            return list(ex.map(_row_args, tasks))
    return [gap_row(*t) for t in tasks]


@dataclass
class LimitReport:
    delta: int
    target: float
    band: float
    rows: list[GapRow]
    within_band: bool
    monotone: bool
    # lim-sup style check: every normalized value sits below target * (1 + band)
    below_bound: bool

    @property
    def verdict(self) -> bool:
        return self.within_band and self.monotone

    def to_dict(self) -> dict:
        return {
            "delta": self.delta,
            "target": self.target,
            "band": self.band,
            "within_band": self.within_band,
            "monotone": self.monotone,
            "below_bound": self.below_bound,
            "verdict": self.verdict,
            "rows": [r.to_dict() for r in self.rows],
        }


def limit_report(delta: int, ns: Sequence[int], config: Optional[Config] = None, threads: int = 1) -> LimitReport:
    """Normalized gaps along ``ns`` against the limiting constant.

    The verdict needs the last relative error inside the configured band and the relative
    errors strictly decreasing along ``ns``.
    """
    cfg = config or Config()
    ns = list(ns)
    if len(ns) < 4 or any(b <= a for a, b in zip(ns, ns[1:])):
        raise InputError("ns must be increasing with at least four entries")
    rows = gap_table(delta, ns, cfg.large_tol, threads)
    band = cfg.bands.limit
    errs = [r.rel_err for r in rows]
    t = target(delta)
    return LimitReport(
        delta,
        t,
        band,
        rows,
        errs[-1] <= band,
        all(b < a for a, b in zip(errs, errs[1:])),
        all(r.normalized <= t * (1 + cfg.bands.limsup) for r in rows),
    )


def complete_minus_edge_scaled(n: int) -> float:
    """``n²(Δ-λ₁)/(Δ-1)`` for ``K_n`` minus an edge, where ``Δ = n-1``; tends to 2."""
    g = complete_minus_edge(n)
    lam = float(np.linalg.eigvalsh(g.adjacency_matrix())[-1])
    d = n - 1
    return n * n * (d - lam) / (d - 1)


def path_lower_bound(spec: FamilySpec) -> float:
    """``p(Δ-p)π² / ((Δ+1)²(2k+1)²)``, the path-eigenvalue lower bound on the gap."""
    if spec.k < 2:
        raise InputError("need k >= 2")
    d, p, k = spec.delta, spec.p, spec.k
    return p * (d - p) * PI2 / ((d + 1) ** 2 * (2 * k + 1) ** 2)


@dataclass
class SandwichRow:
    delta: int
    k: int
    n: int
    lower: float
    slack: float
    measured: float
    upper: float

    @property
    def holds(self) -> bool:
        return self.lower - self.slack <= self.measured <= self.upper

    @property
    def ratio(self) -> float:
        return self.upper / self.lower

    def to_dict(self) -> dict:
        d = asdict(self)
        d.update(holds=self.holds, ratio=self.ratio)
        return d


def sandwich(delta: int, ks: Sequence[int], c: float = 1.0, tol: float = 1e-13) -> list[SandwichRow]:
    """Lower bound, measured gap and closed-form upper bound on the coalescence family
    with ``α = 1``. The lower bound is relaxed by ``c/n³``."""
    out = []
    for k in ks:
        spec = FamilySpec.from_k(delta, k, 1)
        g = h_family(delta, spec.n)
        gap = perron_gap(g, perron(g, tol), delta)
        out.append(SandwichRow(delta, k, spec.n, path_lower_bound(spec), c / spec.n**3, gap, gap_upper_closed_form(spec)))
    return out


@dataclass
class CounterexampleReport:
    delta: int
    delta_min: int
    n: int
    k: int
    diameter: int
    gap: float
    rhs: float
    diameter_bound: int
    details: dict = field(default_factory=dict)

    @property
    def violated(self) -> bool:
        return self.gap < self.rhs

    @property
    def diameter_ok(self) -> bool:
        return self.diameter <= self.diameter_bound

    def to_dict(self) -> dict:
        d = asdict(self)
        d.update(violated=self.violated, diameter_ok=self.diameter_ok)
        return d


def cioaba_check(delta: int, k: int, alpha: Optional[int] = None, tol: float = 1e-13) -> CounterexampleReport:
    """Compare ``Δ-λ₁`` with ``√(Δ-δ)/(nD)`` on the even-order coalescence graph with ``k`` spine cuts.

    ``alpha`` defaults to 2, the smallest even remainder, which gives the pendant variant
    with ``δ = 1``.
    """
    if delta < 3 or delta % 2 == 0:
        raise InputError("delta must be odd and at least 3")
    if k < 2:
        raise InputError("need k >= 2")
    alpha = 2 if alpha is None else alpha
    n = k * (delta + 1) + alpha
    if n % 2 or not 1 <= alpha <= delta + 1:
        raise InputError("alpha must be even and at most delta+1")
    g = h_family(delta, n)
    spec = FamilySpec.from_order(delta, n)
    pd = perron(g, tol)
    gap = perron_gap(g, pd, delta)
    dmin = g.min_degree()
    diam = diameter(g)
    rhs = math.sqrt(delta - dmin) / (n * diam)
    return CounterexampleReport(
        delta, dmin, n, spec.k, diam, gap, rhs, 3 * spec.k + 2 * delta - 2,
        {"lambda1": pd.lambda1, "ratio": gap / rhs, "alpha": spec.alpha},
    )


def cioaba_search(delta: int, k_max: int = 500, k_min: int = 2, step: int = 1) -> Optional[CounterexampleReport]:
    """First ``k`` in ``range(k_min, k_max+1, step)`` whose graph violates the bound."""
    for k in range(k_min, k_max + 1, step):
        rep = cioaba_check(delta, k)
        if rep.violated:
            return rep
    return None
