"""Partition variation sums and adaptive refinement.

The variation of g over a partition P = {t_0 < ... < t_n} is

    sum_i ||g(t_i) - g(t_{i-1}), k||

and the quantity of interest is its supremum over all partitions.  The
supremum itself is not computable from samples; what refinement gives is
a certified *lower* bound: by the triangle axiom G3, inserting points
never decreases the sum, so the level sums climb monotonically toward
(but never past) the supremum.

Both stopping rules are heuristic and say so in their names:

* converged       -- the relative per-level gain stayed below ``gain_tol``
                     for two consecutive levels.  This does NOT certify
                     that the supremum is finite, nor that it was reached;
                     a function can hide unresolved oscillation below the
                     current grid scale.
* diverging       -- the sum crossed ``divergence_cap``, or the per-level
                     gain has kept (at least half of) its recent peak over
                     ``divergence_levels`` consecutive levels while the sum
                     kept growing.  Sustained, non-decaying gains are how an
                     infinite supremum looks through dyadic glasses, but
                     this is evidence, not proof.
* budget_exhausted-- the next refinement would exceed ``max_points``.

Whatever the status, ``value`` is a valid lower bound on the supremum.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import DimensionMismatch, DomainError
from .functions import FunctionSpec, Interval, uniform_grid
from .spaces import ABSTOL, TwoNormPairing, Vec, eval_pairing

Strategy = str  # "dyadic" | "greedy"


@dataclass(frozen=True, slots=True)
class Partition:
    """Strictly increasing grid; the endpoints delimit the interval."""

    points: tuple[float, ...]

    def __post_init__(self):
        pts = tuple(float(t) for t in self.points)
        if len(pts) < 2:
            raise DomainError("a partition needs at least two points")
        if any(u >= v for u, v in zip(pts, pts[1:])):
            raise DomainError("partition points must be strictly increasing")
        object.__setattr__(self, "points", pts)

    @property
    def size(self) -> int:
        return len(self.points)

    @property
    def lo(self) -> float:
        return self.points[0]

    @property
    def hi(self) -> float:
        return self.points[-1]

    def spans(self, interval: Interval) -> bool:
        return self.lo == interval.lo and self.hi == interval.hi

    @classmethod
    def trivial(cls, interval: Interval) -> "Partition":
        return cls((interval.lo, interval.hi))

    @classmethod
    def uniform(cls, interval: Interval, subintervals: int) -> "Partition":
        return cls(tuple(uniform_grid(interval, subintervals + 1)))


@dataclass(frozen=True)
class RefineConfig:
    """Knobs of the refinement loop.  Defaults favor soundness over speed."""

    gain_tol: float = 1e-6
    max_points: int = 2 ** 20
    divergence_cap: float = 1e9
    divergence_levels: int = 8
    strategy: Strategy = "dyadic"

    def __post_init__(self):
        if not self.gain_tol > 0:
            raise DomainError("gain_tol must be positive")
        if self.max_points < 2:
            raise DomainError("max_points must be at least 2")
        if self.divergence_levels < 1:
            raise DomainError("divergence_levels must be at least 1")
        if self.strategy not in ("dyadic", "greedy"):
            raise DomainError(f"unknown strategy {self.strategy!r}")


@dataclass(frozen=True)
class LevelTrace:
    level: int
    points: int
    sum: float


@dataclass(frozen=True)
class VariationEstimate:
    """Lower bound on the variation supremum plus how it was reached."""

    value: float
    status: str  # converged | diverging | budget_exhausted
    trace: tuple[LevelTrace, ...]
    final_partition: Partition

    def as_dict(self, config: RefineConfig | None = None) -> dict:
        """JSON-ready form; field names are frozen for golden tests."""
        out = {
            "value": self.value,
            "status": self.status,
            "trace": [
                {"level": t.level, "points": t.points, "sum": t.sum} for t in self.trace
            ],
            "partition_size": self.final_partition.size,
        }
        if config is not None:
            out["config"] = {
                "gain_tol": config.gain_tol,
                "max_points": config.max_points,
                "divergence_cap": config.divergence_cap,
                "divergence_levels": config.divergence_levels,
                "strategy": config.strategy,
            }
        return out


# fraction of the recent gain peak a level must retain to count as
# "not decreasing" for the divergence rule; absorbs the level-to-level
# noise of oscillatory integrands without letting geometric decay through
GAIN_RETENTION = 0.5


def _check_setup(g: FunctionSpec, p: TwoNormPairing, k: Vec) -> None:
    if g.codomain_dim != p.dim_a:
        raise DimensionMismatch(
            f"function maps into C^{g.codomain_dim} but pairing {p.name!r} "
            f"expects C^{p.dim_a}"
        )
    if k.dim != p.dim_b:
        raise DimensionMismatch(
            f"reference vector has dim {k.dim} but pairing {p.name!r} expects {p.dim_b}"
        )


def _term_fn(p: TwoNormPairing, k: Vec) -> Callable[[tuple, tuple], float]:
    """Scalar kernel (u, v) -> ||u - v, k|| on raw component tuples."""
    kc = k.components
    raw = p.raw
    if p.in_w is None:
        if len(kc) == 1 and p.dim_a == 1:
            def term(u: tuple, v: tuple) -> float:
                return raw((u[0] - v[0],), kc)
        else:
            def term(u: tuple, v: tuple) -> float:
                return raw(tuple(x - y for x, y in zip(u, v)), kc)
        return term

    def checked(u: tuple, v: tuple) -> float:
        return eval_pairing(p, Vec(u) - Vec(v), k)

    return checked


def variation_sum(g: FunctionSpec, p: TwoNormPairing, k: Vec, P: Partition) -> float:
    """Sum of ||g(t_i) - g(t_{i-1}), k|| in left-to-right index order."""
    _check_setup(g, p, k)
    if not P.spans(g.domain):
        raise DomainError(
            f"partition [{P.lo}, {P.hi}] does not span the domain "
            f"[{g.domain.lo}, {g.domain.hi}]"
        )
    term = _term_fn(p, k)
    vals = [g.value_at(t) for t in P.points]
    return sum(term(vals[i], vals[i - 1]) for i in range(1, len(vals)))


def _midpoints(pts: Sequence[float]) -> list[float]:
    return [0.5 * (pts[i] + pts[i + 1]) for i in range(len(pts) - 1)]


def _greedy_selection(gains: list[float], count: int) -> list[int]:
    """Indices of the ``count`` largest gains; ties resolve to lower index."""
    order = sorted(range(len(gains)), key=lambda i: (-gains[i], i))
    return sorted(order[:count])


def refine(P: Partition, g: FunctionSpec, p: TwoNormPairing, k: Vec,
           strategy: Strategy = "dyadic") -> Partition:
    """One refinement step: a strict superset of P.

    dyadic bisects every subinterval.  greedy bisects the ceil(m/2)
    subintervals whose bisection is estimated (via the midpoint) to gain
    the most; by G3 the gain estimate is nonnegative, and zero-gain
    intervals are still eligible to fill the quota.
    """
    _check_setup(g, p, k)
    pts = list(P.points)
    mids = _midpoints(pts)
    if strategy == "dyadic":
        chosen = range(len(mids))
    elif strategy == "greedy":
        term = _term_fn(p, k)
        vals = [g.value_at(t) for t in pts]
        mvals = [g.value_at(t) for t in mids]
        gains = [
            term(mvals[i], vals[i]) + term(vals[i + 1], mvals[i])
            - term(vals[i + 1], vals[i])
            for i in range(len(mids))
        ]
        chosen = _greedy_selection(gains, (len(mids) + 1) // 2)
    else:
        raise DomainError(f"unknown strategy {strategy!r}")

    out: list[float] = []
    chosen_set = set(chosen)
    for i, t in enumerate(pts[:-1]):
        out.append(t)
        if i in chosen_set:
            out.append(mids[i])
    out.append(pts[-1])
    return Partition(tuple(out))


def estimate_variation(g: FunctionSpec, p: TwoNormPairing, k: Vec,
                       cfg: RefineConfig | None = None, *,
                       initial: Partition | None = None) -> VariationEstimate:
    """Monotone refinement from the trivial partition (or ``initial``).

    The returned value is always a sound lower bound on the variation
    supremum; the status is a heuristic classification (see module
    docstring).
    """
    cfg = cfg or RefineConfig()
    _check_setup(g, p, k)
    if initial is None:
        P0 = Partition.trivial(g.domain)
    else:
        if not initial.spans(g.domain):
            raise DomainError("initial partition does not span the domain")
        P0 = initial

    term = _term_fn(p, k)
    pts: list[float] = list(P0.points)
    vals: list[tuple] = [g.value_at(t) for t in pts]
    terms: list[float] = [term(vals[i], vals[i - 1]) for i in range(1, len(vals))]

    sums: list[float] = [sum(terms)]
    trace: list[LevelTrace] = [LevelTrace(0, len(pts), sums[0])]
    gains: list[float] = []
    status: str | None = None
    level = 0
    win = cfg.divergence_levels

    while status is None:
        level += 1
        m = len(pts) - 1
        n_new = m if cfg.strategy == "dyadic" else (m + 1) // 2
        if len(pts) + n_new > cfg.max_points:
            status = "budget_exhausted"
            break

        mids = _midpoints(pts)
        if cfg.strategy == "dyadic":
            chosen = list(range(m))
            mvals = [g.value_at(t) for t in mids]
        else:
            mvals = [g.value_at(t) for t in mids]
            step_gains = [
                term(mvals[i], vals[i]) + term(vals[i + 1], mvals[i]) - terms[i]
                for i in range(m)
            ]
            chosen = _greedy_selection(step_gains, n_new)

        next_pts: list[float] = []
        next_vals: list[tuple] = []
        next_terms: list[float] = []
        chosen_set = set(chosen)
        for i in range(m):
            next_pts.append(pts[i])
            next_vals.append(vals[i])
            if i in chosen_set:
                next_pts.append(mids[i])
                next_vals.append(mvals[i])
                next_terms.append(term(mvals[i], vals[i]))
                next_terms.append(term(vals[i + 1], mvals[i]))
            else:
                next_terms.append(terms[i])
        next_pts.append(pts[-1])
        next_vals.append(vals[-1])
        pts, vals, terms = next_pts, next_vals, next_terms

        s = sum(terms)
        trace.append(LevelTrace(level, len(pts), s))
        gain = s - sums[-1]
        gains.append(gain)
        sums.append(s)

        if s > cfg.divergence_cap:
            status = "diverging"
            break
        if len(gains) > win:
            recent_peak = max(gains[-win - 1:-1])
            grew = s > sums[-win - 1]
            if gain > 0 and recent_peak > 0 and gain >= GAIN_RETENTION * recent_peak and grew:
                status = "diverging"
                break
        if len(gains) >= 2:
            rg_now = gain / s if s > 0 else 0.0
            rg_prev = gains[-2] / sums[-2] if sums[-2] > 0 else 0.0
            if rg_now < cfg.gain_tol and rg_prev < cfg.gain_tol:
                status = "converged"
                break

    return VariationEstimate(
        value=sums[-1],
        status=status,
        trace=tuple(trace),
        final_partition=Partition(tuple(pts)),
    )


def merge_partitions(*parts: Partition) -> Partition:
    """Union of the point sets (the common refinement)."""
    merged: set[float] = set()
    for part in parts:
        merged.update(part.points)
    return Partition(tuple(sorted(merged)))


def _sum_over(g: FunctionSpec, term: Callable, pts: Sequence[float]) -> float:
    vals = [g.value_at(t) for t in pts]
    return sum(term(vals[i], vals[i - 1]) for i in range(1, len(vals)))


def split_check(g: FunctionSpec, p: TwoNormPairing, k: Vec, lam: float,
                cfg: RefineConfig | None = None) -> tuple[float, float, float]:
    """Estimates over [a, lam], [lam, b] and [a, b], evaluated on merged grids.

    The full-interval refinement starts from {a, lam, b}, and all three
    returned sums are taken over the common refinement of the three final
    partitions, restricted to the respective interval.  The two halves
    then partition the full term sequence at lam, so

        V_lo + V_hi <= V_full        (exactly, in real arithmetic)

    with equality up to floating-point association order.
    """
    cfg = cfg or RefineConfig()
    a, b = g.domain.lo, g.domain.hi
    if not a < lam < b:
        raise DomainError(f"split point {lam!r} must lie strictly inside ({a}, {b})")

    est_lo = estimate_variation(g.with_domain(Interval(a, lam)), p, k, cfg)
    est_hi = estimate_variation(g.with_domain(Interval(lam, b)), p, k, cfg)
    est_full = estimate_variation(
        g, p, k, cfg, initial=Partition((a, lam, b))
    )

    merged = merge_partitions(
        est_lo.final_partition, est_hi.final_partition, est_full.final_partition
    )
    term = _term_fn(p, k)
    cut = merged.points.index(lam)
    v_lo = _sum_over(g, term, merged.points[: cut + 1])
    v_hi = _sum_over(g, term, merged.points[cut:])
    v_full = _sum_over(g, term, merged.points)
    return v_lo, v_hi, v_full


@dataclass(frozen=True)
class PointwiseBound:
    """Result of checking ||g(s) - g(m), k|| <= variation sum over P."""

    holds: bool
    s: float
    m: float
    value: float  # the maximal pairwise value, attained at (s, m)
    bound: float  # the variation sum over the partition


def pointwise_bound_values(values: Sequence[Vec], points: Sequence[float],
                           p: TwoNormPairing, k: Vec) -> PointwiseBound:
    """Pairwise bound check over explicit sample values."""
    term = _term_fn(p, k)
    raw = [v.components for v in values]
    bound = sum(term(raw[i], raw[i - 1]) for i in range(1, len(raw)))
    worst = (points[0], points[0], 0.0)
    for i in range(len(raw)):
        for j in range(i + 1, len(raw)):
            val = term(raw[j], raw[i])
            if val > worst[2]:
                worst = (points[i], points[j], val)
    s, m, value = worst
    slack = max(ABSTOL, ABSTOL * max(abs(value), abs(bound)))
    return PointwiseBound(holds=value <= bound + slack, s=s, m=m, value=value, bound=bound)


def pointwise_bound_check(g: FunctionSpec, p: TwoNormPairing, k: Vec,
                          P_final: Partition) -> PointwiseBound:
    """For all s, m in the partition: ||g(s) - g(m), k|| <= sum over P_final.

    Quadratic in the partition size; meant for verification-sized grids.
    """
    _check_setup(g, p, k)
    if not P_final.spans(g.domain):
        raise DomainError("partition does not span the domain")
    values = [Vec(g.value_at(t)) for t in P_final.points]
    return pointwise_bound_values(values, P_final.points, p, k)
