"""Randomized verification of pairing axioms and variation laws.

Every check draws seeded random inputs (components uniform in the box
[-10, 10] + i[-10, 10]), with a short list of hand-picked edge cases
injected as the first trials: zero vectors, alpha in {0, -1}, equal and
collinear vectors, and the deterministic witness that breaks the G3
axiom of the defective demonstration pairing.

Failure policy: axioms hold exactly in real arithmetic, so a comparison
only counts as a failure when it exceeds roundoff slack --
``lhs > rhs + max(abstol, reltol * max(lhs, rhs))`` for inequalities,
and the analogous two-sided bound (at relative tolerance 1e-9) for
equalities.  Reports are bitwise reproducible from the seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .bv import BVFunction, bv_linear_combine, bv_scale, bv_two_norm_2G
from .errors import DimensionMismatch
from .functions import (
    CatalogEntry,
    catalog_entry,
    combine_specs,
    parse_constant_vector,
    scale_spec,
)
from .spaces import ABSTOL, RELTOL, TwoNormPairing, Vec, pairing_by_name, reverse_triangle_gap
from .variation import (
    Partition,
    RefineConfig,
    pointwise_bound_check,
    split_check,
    variation_sum,
)

INEQ_RELTOL = 1e-12  # inequalities: slack absorbs rounding only


def _ser_complex(z: complex) -> list[float]:
    return [z.real, z.imag]


def _ser_vec(v: Vec) -> list[list[float]]:
    return [_ser_complex(z) for z in v.components]


@dataclass(frozen=True)
class CheckResult:
    name: str
    trials: int
    failures: int
    worst_witness: dict | None  # present whenever failures > 0

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "trials": self.trials,
            "failures": self.failures,
            "worst_witness": self.worst_witness,
        }


@dataclass(frozen=True)
class AxiomReport:
    seed: int
    checks: tuple[CheckResult, ...]

    @property
    def total_failures(self) -> int:
        return sum(c.failures for c in self.checks)

    @property
    def passed(self) -> bool:
        return self.total_failures == 0

    def as_dict(self) -> dict:
        return {
            "seed": self.seed,
            "failures": self.total_failures,
            "checks": [c.as_dict() for c in self.checks],
        }


class _Check:
    """Accumulates one named check across trials, keeping the worst failure."""

    def __init__(self, name: str):
        self.name = name
        self.trials = 0
        self.failures = 0
        self._worst_margin = 0.0
        self._worst: dict | None = None

    def observe(self, trial: int, inputs: dict, margin: float,
                lhs: float, rhs: float) -> None:
        self.trials += 1
        if margin > 0:
            self.failures += 1
            if self._worst is None or margin > self._worst_margin:
                self._worst_margin = margin
                self._worst = {"trial": trial, "inputs": inputs,
                               "lhs": lhs, "rhs": rhs}

    def result(self) -> CheckResult:
        return CheckResult(self.name, self.trials, self.failures, self._worst)


def _eq_margin(lhs: float, rhs: float, reltol: float = RELTOL) -> float:
    return abs(lhs - rhs) - max(ABSTOL, reltol * max(abs(lhs), abs(rhs)))


def _le_margin(lhs: float, rhs: float, reltol: float = INEQ_RELTOL) -> float:
    return lhs - rhs - max(ABSTOL, reltol * max(abs(lhs), abs(rhs)))


def _rand_complex(rng: random.Random) -> complex:
    return complex(rng.uniform(-10.0, 10.0), rng.uniform(-10.0, 10.0))


def _rand_vec(rng: random.Random, dim: int) -> Vec:
    return Vec(tuple(_rand_complex(rng) for _ in range(dim)))


def _ones(dim: int) -> Vec:
    return Vec((1 + 0j,) * dim)


def _e1(dim: int) -> Vec:
    return Vec(((1 + 0j),) + (0j,) * (dim - 1))


def _pairing_edge_cases(dim_a: int, dim_b: int) -> list[tuple[Vec, Vec, Vec, Vec, complex]]:
    """Hand-picked (a1, a2, b1, b2, alpha) tuples run before random trials."""
    return [
        # G3 witness for the broken demonstration pairing: a1 + a2 = 2*e1
        (_e1(dim_a), _e1(dim_a), _ones(dim_b), _ones(dim_b), -1 + 0j),
        # everything zero, alpha = 0
        (Vec.zero(dim_a), Vec.zero(dim_a), Vec.zero(dim_b), Vec.zero(dim_b), 0j),
        # equal vectors, alpha = -1
        (_ones(dim_a), _ones(dim_a), _ones(dim_b), _ones(dim_b), -1 + 0j),
        # alpha = 0 with nonzero vectors
        (_ones(dim_a), _e1(dim_a), _ones(dim_b), -1 * _ones(dim_b), 0j),
        # collinear complex pair, alpha = i
        (_ones(dim_a), 1j * _ones(dim_a), _e1(dim_b), _e1(dim_b), 1j),
    ]


def check_pairing_axioms(p: TwoNormPairing, symmetric: bool = False,
                         trials: int = 1000, seed: int = 0) -> AxiomReport:
    """Sample the homogeneity and triangle axioms (plus the symmetric
    variants when requested) and report failures with witnesses."""
    if trials < 1:
        raise ValueError(f"trials must be positive, got {trials}")
    if symmetric and p.dim_a != p.dim_b:
        raise DimensionMismatch(
            f"symmetric checks need a square pairing, got dims ({p.dim_a}, {p.dim_b})"
        )
    rng = random.Random(seed)
    names = ["G1", "G2", "G3"] + (["S1", "S2", "S3"] if symmetric else [])
    checks = {name: _Check(name) for name in names}
    edges = _pairing_edge_cases(p.dim_a, p.dim_b)

    for trial in range(trials):
        if trial < len(edges):
            a1, a2, b1, b2, alpha = edges[trial]
        else:
            a1, a2 = _rand_vec(rng, p.dim_a), _rand_vec(rng, p.dim_a)
            b1, b2 = _rand_vec(rng, p.dim_b), _rand_vec(rng, p.dim_b)
            alpha = _rand_complex(rng)
        inputs = {
            "a1": _ser_vec(a1), "a2": _ser_vec(a2),
            "b1": _ser_vec(b1), "b2": _ser_vec(b2),
            "alpha": _ser_complex(alpha),
        }

        base = p.evaluate(a1, b1)
        scaled_a = p.evaluate(alpha * a1, b1)
        scaled_b = p.evaluate(a1, alpha * b1)
        want = abs(alpha) * base
        m1, m2 = _eq_margin(scaled_a, want), _eq_margin(scaled_b, want)
        if m2 > m1:
            checks["G1"].observe(trial, inputs, m2, scaled_b, want)
        else:
            checks["G1"].observe(trial, inputs, m1, scaled_a, want)

        lhs = p.evaluate(a1, b1 + b2)
        rhs = p.evaluate(a1, b1) + p.evaluate(a1, b2)
        checks["G2"].observe(trial, inputs, _le_margin(lhs, rhs), lhs, rhs)

        lhs = p.evaluate(a1 + a2, b1)
        rhs = p.evaluate(a1, b1) + p.evaluate(a2, b1)
        checks["G3"].observe(trial, inputs, _le_margin(lhs, rhs), lhs, rhs)

        if symmetric:
            lhs, rhs = p.evaluate(a1, a2), p.evaluate(a2, a1)
            checks["S1"].observe(trial, inputs, _eq_margin(lhs, rhs), lhs, rhs)
            lhs = p.evaluate(a1, alpha * a2)
            rhs = abs(alpha) * p.evaluate(a1, a2)
            checks["S2"].observe(trial, inputs, _eq_margin(lhs, rhs), lhs, rhs)
            lhs = p.evaluate(a1, a2 + b2)  # dim_a == dim_b here
            rhs = p.evaluate(a1, a2) + p.evaluate(a1, b2)
            checks["S3"].observe(trial, inputs, _le_margin(lhs, rhs), lhs, rhs)

    return AxiomReport(seed=seed, checks=tuple(checks[n].result() for n in names))


def check_slice_subspaces(p: TwoNormPairing, trials: int = 200, seed: int = 0) -> AxiomReport:
    """Sample the admissible-set requirement: each slice is a subspace.

    For (a1, b), (a2, b) admissible, a1 + alpha*a2 must stay admissible
    with b (and symmetrically in the second slot).  Restricted admissible
    sets are only ever declared through a predicate, so this is the
    probabilistic stand-in for a proof.
    """
    if trials < 1:
        raise ValueError(f"trials must be positive, got {trials}")
    rng = random.Random(seed)
    first = _Check("slice_A_is_subspace")
    second = _Check("slice_B_is_subspace")
    for trial in range(trials):
        a1, a2 = _rand_vec(rng, p.dim_a), _rand_vec(rng, p.dim_a)
        b1, b2 = _rand_vec(rng, p.dim_b), _rand_vec(rng, p.dim_b)
        alpha = _rand_complex(rng)
        inputs = {
            "a1": _ser_vec(a1), "a2": _ser_vec(a2),
            "b1": _ser_vec(b1), "b2": _ser_vec(b2),
            "alpha": _ser_complex(alpha),
        }
        if p.contains(a1, b1) and p.contains(a2, b1):
            closed = p.contains(a1 + alpha * a2, b1) and p.contains(Vec.zero(p.dim_a), b1)
            first.observe(trial, inputs, 0.0 if closed else 1.0, float(closed), 1.0)
        if p.contains(a1, b1) and p.contains(a1, b2):
            closed = p.contains(a1, b1 + alpha * b2) and p.contains(a1, Vec.zero(p.dim_b))
            second.observe(trial, inputs, 0.0 if closed else 1.0, float(closed), 1.0)
    return AxiomReport(seed=seed, checks=(first.result(), second.result()))


# ---------------------------------------------------------------------------
# variation theorems
# ---------------------------------------------------------------------------

HARNESS_CFG = RefineConfig(gain_tol=1e-3, max_points=512, strategy="dyadic")


def _resolve_setup(entry: CatalogEntry, p: TwoNormPairing | None, k: Vec | None):
    """Use the caller's pairing when dimensions line up, else the entry's."""
    g = entry.spec
    if p is not None and k is not None and p.dim_a == g.codomain_dim and k.dim == p.dim_b:
        return g, p, k
    return g, pairing_by_name(entry.pairing_name), parse_constant_vector(entry.k_text)


def _random_partition(rng: random.Random, g, max_interior: int = 10) -> Partition:
    lo, hi = g.domain.lo, g.domain.hi
    interior: set[float] = set()
    for _ in range(rng.randint(0, max_interior)):
        t = rng.uniform(lo, hi)
        if lo < t < hi:
            interior.add(t)
    return Partition((lo, *sorted(interior), hi))


def check_variation_theorems(catalog_ids: Sequence[str],
                             p: TwoNormPairing | None = None,
                             k: Vec | None = None,
                             cfg: RefineConfig | None = None,
                             trials: int = 200,
                             seed: int = 0) -> AxiomReport:
    """Per-partition homogeneity and subadditivity, the split inequality,
    the pointwise bound, and the reverse triangle inequality, sampled over
    the given catalog functions.

    ``p``/``k`` apply to functions whose dimensions match; other functions
    fall back to their catalog reference pairing.
    """
    if trials < 1:
        raise ValueError(f"trials must be positive, got {trials}")
    cfg = cfg or HARNESS_CFG
    entries = [catalog_entry(i) for i in catalog_ids]
    rng = random.Random(seed)
    names = [
        "partition_homogeneity",
        "partition_subadditivity",
        "split_inequality",
        "pointwise_bound",
        "reverse_triangle",
    ]
    checks = {name: _Check(name) for name in names}

    for trial in range(trials):
        entry = entries[trial % len(entries)]
        g, pairing, kvec = _resolve_setup(entry, p, k)
        alpha = -2 + 0j if trial < len(entries) else _rand_complex(rng)
        P = _random_partition(rng, g)
        inputs = {
            "function": entry.id,
            "pairing": pairing.name,
            "k": _ser_vec(kvec),
            "alpha": _ser_complex(alpha),
            "partition": list(P.points),
        }

        base_sum = variation_sum(g, pairing, kvec, P)
        lhs = variation_sum(scale_spec(alpha, g), pairing, kvec, P)
        checks["partition_homogeneity"].observe(
            trial, inputs, _eq_margin(lhs, abs(alpha) * base_sum), lhs,
            abs(alpha) * base_sum,
        )

        partner = entries[rng.randrange(len(entries))]
        if partner.spec.codomain_dim == g.codomain_dim:
            h = partner.spec.with_domain(g.domain)
        else:
            h = scale_spec(_rand_complex(rng), g)
        lhs = variation_sum(combine_specs(1, g, 1, h), pairing, kvec, P)
        rhs = base_sum + variation_sum(h, pairing, kvec, P)
        checks["partition_subadditivity"].observe(
            trial, inputs, _le_margin(lhs, rhs), lhs, rhs
        )

        lam = g.domain.lo + g.domain.width * rng.uniform(0.05, 0.95)
        v_lo, v_hi, v_full = split_check(g, pairing, kvec, lam, cfg)
        checks["split_inequality"].observe(
            trial, {**inputs, "lambda": lam},
            _le_margin(v_lo + v_hi, v_full, reltol=1e-11), v_lo + v_hi, v_full,
        )

        pb = pointwise_bound_check(g, pairing, kvec, P)
        checks["pointwise_bound"].observe(
            trial, {**inputs, "s": pb.s, "m": pb.m},
            _le_margin(pb.value, pb.bound), pb.value, pb.bound,
        )

        pts = [rng.uniform(g.domain.lo, g.domain.hi) for _ in range(4)]
        a = Vec(g.value_at(pts[0])) - Vec(g.value_at(pts[1]))
        b = Vec(g.value_at(pts[2])) - Vec(g.value_at(pts[3]))
        gap, bound = reverse_triangle_gap(pairing, a, b, kvec)
        checks["reverse_triangle"].observe(
            trial, {**inputs, "points": pts}, _le_margin(gap, bound), gap, bound
        )

    return AxiomReport(seed=seed, checks=tuple(checks[n].result() for n in names))


# ---------------------------------------------------------------------------
# symmetric two-norm on the BV space
# ---------------------------------------------------------------------------

def check_2G_axioms(fs: Sequence[BVFunction], trials: int = 200, seed: int = 0,
                    cfg: RefineConfig | None = None) -> AxiomReport:
    """Symmetry (exact), homogeneity and subadditivity of the symmetric
    two-norm on bounded-variation wrappers, at the formula level."""
    if trials < 1:
        raise ValueError(f"trials must be positive, got {trials}")
    if not fs:
        raise ValueError("need at least one BV function")
    rng = random.Random(seed)
    names = ["2g_symmetry", "2g_homogeneity", "2g_triangle"]
    checks = {name: _Check(name) for name in names}
    edge_alphas = [0j, -1 + 0j, 2 + 0j]

    for trial in range(trials):
        if trial < len(edge_alphas):
            f, h, g2 = fs[0], fs[-1], fs[trial % len(fs)]
            alpha = edge_alphas[trial]
        else:
            f = fs[rng.randrange(len(fs))]
            h = fs[rng.randrange(len(fs))]
            g2 = fs[rng.randrange(len(fs))]
            alpha = _rand_complex(rng)
        inputs = {
            "f": f.spec.name, "h": h.spec.name, "g": g2.spec.name,
            "alpha": _ser_complex(alpha),
        }

        lhs, rhs = bv_two_norm_2G(f, h), bv_two_norm_2G(h, f)
        checks["2g_symmetry"].observe(
            trial, inputs, 0.0 if lhs == rhs else abs(lhs - rhs), lhs, rhs
        )

        lhs = bv_two_norm_2G(bv_scale(alpha, f), h)
        rhs = abs(alpha) * bv_two_norm_2G(f, h)
        checks["2g_homogeneity"].observe(trial, inputs, _eq_margin(lhs, rhs), lhs, rhs)

        combined = bv_linear_combine(1, f, 1, g2, cfg)
        lhs = bv_two_norm_2G(combined, h)
        rhs = bv_two_norm_2G(f, h) + bv_two_norm_2G(g2, h)
        checks["2g_triangle"].observe(
            trial, inputs, _le_margin(lhs, rhs, reltol=1e-9), lhs, rhs
        )

    return AxiomReport(seed=seed, checks=tuple(checks[n].result() for n in names))
