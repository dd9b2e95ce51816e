"""Operations on the space of bounded-variation functions.

Membership is heuristic by necessity: a function joins BV([a,b]) here
when its refinement estimate reached the ``converged`` status, which is
evidence, not proof, that the variation supremum is finite.  Estimates
are cached on the wrapper, and the symmetric two-norm

    ||f, h|| = V(f) * ||h(a), k|| + V(h) * ||f(a), k||

is computed from the cached values, so its algebraic laws (symmetry,
homogeneity, triangle inequality) hold at the formula level even when
the estimates themselves are inexact lower bounds.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import CompositionError, VariationNotConverged
from .functions import FunctionSpec, combine_specs, eval_function, scale_spec, uniform_grid
from .spaces import ABSTOL, Seminorm, TwoNormPairing, Vec, eval_pairing
from .variation import (
    LevelTrace,
    RefineConfig,
    VariationEstimate,
    estimate_variation,
)


@dataclass(frozen=True)
class BVFunction:
    """A function bundled with its pairing, reference vector and cached
    variation estimate (status always ``converged``)."""

    spec: FunctionSpec
    pairing: TwoNormPairing
    k: Vec
    variation: VariationEstimate

    @classmethod
    def build(cls, spec: FunctionSpec, pairing: TwoNormPairing, k: Vec,
              cfg: RefineConfig | None = None) -> "BVFunction":
        est = estimate_variation(spec, pairing, k, cfg)
        if est.status != "converged":
            raise VariationNotConverged(
                f"{spec.name}: refinement ended with status {est.status!r} "
                f"(value {est.value:g}); not admitted to the BV space"
            )
        return cls(spec=spec, pairing=pairing, k=k, variation=est)

    def value_at_left_end(self) -> Vec:
        return eval_function(self.spec, self.spec.domain.lo)


def _require_compatible(f: BVFunction, h: BVFunction) -> None:
    if f.pairing.name != h.pairing.name or f.pairing.dim_a != h.pairing.dim_a \
            or f.pairing.dim_b != h.pairing.dim_b:
        raise CompositionError(
            f"pairings differ: {f.pairing.name!r} vs {h.pairing.name!r}"
        )
    if f.k != h.k:
        raise CompositionError("reference vectors k differ")
    if f.spec.domain != h.spec.domain:
        raise CompositionError(
            f"domains differ: [{f.spec.domain.lo}, {f.spec.domain.hi}] vs "
            f"[{h.spec.domain.lo}, {h.spec.domain.hi}]"
        )


@dataclass(frozen=True)
class BoundReport:
    """Sampled check that ||g(x), k|| stays under an additive bound."""

    sup_sample: float
    bound: float
    samples: int
    holds: bool


def is_2k_bounded(g: FunctionSpec, p: TwoNormPairing, k: Vec, sigma: float,
                  n_samples: int = 10_000) -> BoundReport:
    """Sample ||g(x), k|| on a uniform grid against the bound
    ||g(a), k|| + ||g(b), k|| + sigma.

    For any g whose variation is at most sigma, the bound holds at every
    point of the interval, so ``holds`` must come back true whenever
    sigma dominates the true variation.
    """
    grid = uniform_grid(g.domain, max(2, n_samples))
    norms = [eval_pairing(p, eval_function(g, t), k) for t in grid]
    sup_sample = max(norms)
    bound = norms[0] + norms[-1] + sigma
    slack = max(ABSTOL, ABSTOL * max(sup_sample, abs(bound)))
    return BoundReport(
        sup_sample=sup_sample,
        bound=bound,
        samples=len(grid),
        holds=sup_sample <= bound + slack,
    )


def bv_linear_combine(alpha: complex, f: BVFunction, beta: complex,
                      h: BVFunction, cfg: RefineConfig | None = None) -> BVFunction:
    """alpha*f + beta*h with the variation re-estimated from scratch.

    The fresh estimate respects |alpha| V(f) + |beta| V(h) up to roundoff
    and estimator tolerance (variation is homogeneous and subadditive).
    """
    _require_compatible(f, h)
    if f.spec.codomain_dim != h.spec.codomain_dim:
        raise CompositionError("codomain dimensions differ")
    combined = combine_specs(alpha, f.spec, beta, h.spec)
    return BVFunction.build(combined, f.pairing, f.k, cfg)


def bv_scale(alpha: complex, f: BVFunction) -> BVFunction:
    """alpha*f with the cached variation scaled exactly by |alpha|.

    Variation is absolutely homogeneous, so scaling the estimate is exact
    at the formula level; no re-estimation noise enters.  Used by the
    axiom harness to check homogeneity of the symmetric two-norm.
    """
    mag = abs(complex(alpha))
    scaled_spec = scale_spec(alpha, f.spec)
    est = f.variation
    scaled_est = VariationEstimate(
        value=mag * est.value,
        status=est.status,
        trace=tuple(LevelTrace(t.level, t.points, mag * t.sum) for t in est.trace),
        final_partition=est.final_partition,
    )
    return replace(f, spec=scaled_spec, variation=scaled_est)


def variation_via_seminorm(g: FunctionSpec, s: Seminorm, k: Vec, sb: Seminorm,
                           cfg: RefineConfig | None = None) -> float:
    """Variation under the product pairing, via the seminorm shortcut.

    For the pairing ||x, y|| = s(x) * sb(y) the variation factorizes:
    every partition sum is sb(k) times the plain seminorm sum, so the
    supremum is sb(k) * V(g, s).  Estimate V(g, s) with the same
    refinement engine (pairing the seminorm against a constant-one
    second slot) and scale once.
    """
    lift = TwoNormPairing(
        name=f"lift({s.name})",
        dim_a=s.dim,
        dim_b=k.dim,
        raw=lambda a, b: s.raw(a),
    )
    base = estimate_variation(g, lift, k, cfg)
    return sb(k) * base.value


def bv_two_norm_2G(f: BVFunction, h: BVFunction) -> float:
    """V(f) * ||h(a), k|| + V(h) * ||f(a), k|| from the cached estimates.

    Symmetric by construction; homogeneous and subadditive because the
    variation is.  Not definite: any function vanishing at a with zero
    variation pairs to 0 with everything.
    """
    _require_compatible(f, h)
    fa = eval_pairing(f.pairing, f.value_at_left_end(), f.k)
    ha = eval_pairing(h.pairing, h.value_at_left_end(), h.k)
    return f.variation.value * ha + h.variation.value * fa


def bv_norm_with_details(f: BVFunction, h: BVFunction) -> dict:
    """Value plus the ingredients, JSON-ready (used by the CLI)."""
    return {
        "value": bv_two_norm_2G(f, h),
        "Vf": f.variation.value,
        "Vh": h.variation.value,
    }
