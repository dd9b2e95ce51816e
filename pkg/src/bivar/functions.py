"""Vector-valued functions of one real variable.

A ``FunctionSpec`` couples component expression ASTs with a closed
interval of definition.  Built-in catalog entries carry reference
metadata (natural pairing, reference vector, analytic variation where
one exists) used by the verification suites.

The ``TaggedAdversary`` stands in for functions defined by a
rational/irrational case split, which no floating-point sampler can
evaluate: it is only ever observed through explicitly tagged partitions
whose points alternate between its two values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Mapping

from . import expressions as ex
from .errors import ArityMismatch, CatalogError, DomainError, EvaluationError, ExpressionError
from .spaces import TwoNormPairing, Vec, eval_pairing


@dataclass(frozen=True, slots=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise DomainError(f"interval endpoints must be finite, got [{self.lo}, {self.hi}]")
        if not self.lo < self.hi:
            raise DomainError(f"interval needs lo < hi, got [{self.lo}, {self.hi}]")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def contains(self, t: float) -> bool:
        return self.lo <= t <= self.hi

    def midpoint(self) -> float:
        return 0.5 * (self.lo + self.hi)


def uniform_grid(interval: Interval, n: int) -> list[float]:
    """n >= 2 evenly spaced samples with exact endpoints, all in-domain."""
    if n < 2:
        raise DomainError(f"uniform grid needs at least 2 points, got {n}")
    lo, hi, m = interval.lo, interval.hi, n - 1
    pts = [((m - j) * lo + j * hi) / m for j in range(n)]
    pts[0], pts[-1] = lo, hi
    return [min(max(t, lo), hi) for t in pts]


@dataclass(frozen=True)
class FunctionSpec:
    """g : [lo, hi] -> C^d given by one expression AST per component.

    ``closures`` assigns values at isolated singular points (e.g. the
    limit 0 of t*sin(1/t) at t=0); evaluation consults them first.
    """

    name: str
    components: tuple[ex.Node, ...]
    codomain_dim: int
    domain: Interval
    closures: tuple[tuple[float, tuple[complex, ...]], ...] = ()
    _eval: Callable[[float], tuple[complex, ...]] = field(
        init=False, repr=False, compare=False, default=None  # type: ignore[assignment]
    )
    _closure_map: Mapping[float, tuple[complex, ...]] = field(
        init=False, repr=False, compare=False, default=None  # type: ignore[assignment]
    )

    def __post_init__(self):
        if self.codomain_dim != len(self.components):
            raise ArityMismatch(
                f"{self.codomain_dim} components declared, expression has {len(self.components)}"
            )
        object.__setattr__(self, "_eval", ex.compile_components(self.components))
        object.__setattr__(
            self, "_closure_map",
            {t: tuple(complex(c) for c in v) for t, v in self.closures},
        )

    def value_at(self, t: float) -> tuple[complex, ...]:
        """Raw component tuple at t; no domain check (callers guarantee it)."""
        hit = self._closure_map.get(t)
        if hit is not None:
            return hit
        try:
            return self._eval(t)
        except (ZeroDivisionError, OverflowError, ValueError) as exc:
            raise EvaluationError(f"{self.name}: evaluation failed at t={t!r}: {exc}") from exc

    def with_domain(self, domain: Interval) -> "FunctionSpec":
        return replace(self, domain=domain)

    def text(self) -> str:
        """Canonical source form of the body."""
        if len(self.components) == 1:
            return ex.to_text(self.components[0])
        return ex.to_text(ex.Tup(self.components))


DEFAULT_DOMAIN = Interval(0.0, 1.0)


def parse_function(text: str, codomain_dim: int | None = None,
                   domain: Interval = DEFAULT_DOMAIN) -> FunctionSpec:
    """Parse an expression into a FunctionSpec.

    When ``codomain_dim`` is given it must equal the tuple arity of the
    top-level expression; when omitted the arity is inferred.
    """
    node = ex.parse_expression(text)
    components = ex.components_of(node)
    if codomain_dim is not None and codomain_dim != len(components):
        raise ArityMismatch(
            f"declared codomain dimension {codomain_dim}, expression has "
            f"{len(components)} component(s)"
        )
    return FunctionSpec(
        name=text.strip(),
        components=components,
        codomain_dim=len(components),
        domain=domain,
    )


def eval_function(f: FunctionSpec, t: float) -> Vec:
    """Evaluate with domain checking (closed interval, endpoints included)."""
    if not f.domain.contains(t):
        raise DomainError(
            f"t={t!r} outside the domain [{f.domain.lo}, {f.domain.hi}] of {f.name}"
        )
    return Vec(f.value_at(t))


def _contains_var(node: ex.Node) -> bool:
    if isinstance(node, ex.Var):
        return True
    if isinstance(node, ex.Neg):
        return _contains_var(node.arg)
    if isinstance(node, ex.BinOp):
        return _contains_var(node.lhs) or _contains_var(node.rhs)
    if isinstance(node, ex.Call):
        return _contains_var(node.arg)
    if isinstance(node, ex.Tup):
        return any(_contains_var(item) for item in node.items)
    return False


def parse_constant_vector(text: str) -> Vec:
    """Parse a constant expression (no t) into a vector; scalars give dim 1."""
    node = ex.parse_expression(text)
    if _contains_var(node):
        raise ExpressionError("constant expected, but expression uses t", 0)
    components = ex.components_of(node)
    values = ex.compile_components(components)(0.0)
    return Vec(values)


def scale_spec(alpha: complex, f: FunctionSpec) -> FunctionSpec:
    """The function alpha * f, componentwise, closures included."""
    components = tuple(ex.scale_node(alpha, fc) for fc in f.components)
    closures = tuple(
        (t, tuple(complex(alpha) * a for a in v)) for t, v in f.closures
    )
    return FunctionSpec(
        name=f"({alpha})*{f.name}",
        components=components,
        codomain_dim=f.codomain_dim,
        domain=f.domain,
        closures=closures,
    )


def combine_specs(alpha: complex, f: FunctionSpec, beta: complex,
                  h: FunctionSpec) -> FunctionSpec:
    """The function alpha*f + beta*h; closure values combine pointwise."""
    if f.codomain_dim != h.codomain_dim:
        raise ArityMismatch(
            f"codomain dimensions differ: {f.codomain_dim} vs {h.codomain_dim}"
        )
    if f.domain != h.domain:
        raise DomainError(
            f"domains differ: [{f.domain.lo}, {f.domain.hi}] vs "
            f"[{h.domain.lo}, {h.domain.hi}]"
        )
    components = tuple(
        ex.add_nodes(ex.scale_node(alpha, fc), ex.scale_node(beta, hc))
        for fc, hc in zip(f.components, h.components)
    )
    closure_points = {t for t, _ in f.closures} | {t for t, _ in h.closures}
    closures = tuple(
        (
            t,
            tuple(
                complex(alpha) * a + complex(beta) * b
                for a, b in zip(f.value_at(t), h.value_at(t))
            ),
        )
        for t in sorted(closure_points)
        if f.domain.contains(t)
    )
    return FunctionSpec(
        name=f"({alpha})*{f.name} + ({beta})*{h.name}",
        components=components,
        codomain_dim=f.codomain_dim,
        domain=f.domain,
        closures=closures,
    )


# ---------------------------------------------------------------------------
# catalog
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CatalogEntry:
    """A named function plus the reference data the test suites lean on.

    ``variation_formula`` gives the analytic variation on a subinterval
    under the entry's reference pairing and reference vector, when a
    closed form is known.
    """

    id: str
    spec: FunctionSpec
    pairing_name: str
    k_text: str
    expected_status: str  # refinement outcome under default settings
    variation_formula: Callable[[Interval], float] | None = None


def _entry(id_: str, text: str, pairing_name: str, k_text: str, expected: str,
           closures: tuple[tuple[float, tuple[complex, ...]], ...] = (),
           formula: Callable[[Interval], float] | None = None) -> CatalogEntry:
    spec = parse_function(text)
    if closures:
        spec = replace(spec, name=id_, closures=closures)
    else:
        spec = replace(spec, name=id_)
    return CatalogEntry(
        id=id_, spec=spec, pairing_name=pairing_name, k_text=k_text,
        expected_status=expected, variation_formula=formula,
    )


CATALOG: dict[str, CatalogEntry] = {
    entry.id: entry
    for entry in (
        _entry("linear_ii", "(i*t, i*t)", "euclidean-modulus", "sqrt(2)",
               "converged", formula=lambda iv: 2.0 * iv.width),
        _entry("monotone_id", "t", "modulus-product", "1",
               "converged", formula=lambda iv: iv.width),
        _entry("const_c", "(1, 1)", "euclidean-modulus", "sqrt(2)",
               "converged", formula=lambda iv: 0.0),
        _entry("xsin_inv_x", "t * sin(1/t)", "modulus-product", "1",
               "diverging", closures=((0.0, (0j,)),)),
        _entry("x2sin_inv_x", "t^2 * sin(1/t)", "modulus-product", "1",
               "converged", closures=((0.0, (0j,)),)),
    )
}


def catalog_ids() -> list[str]:
    return list(CATALOG)


def catalog_entry(id_: str) -> CatalogEntry:
    try:
        return CATALOG[id_]
    except KeyError:
        raise CatalogError(f"unknown catalog id {id_!r}; known: {', '.join(CATALOG)}") from None


def resolve_function(text_or_id: str, domain: Interval | None = None) -> FunctionSpec:
    """Catalog id, or failing that an expression; optional domain rebind."""
    if text_or_id in CATALOG:
        spec = CATALOG[text_or_id].spec
    else:
        spec = parse_function(text_or_id)
    return spec.with_domain(domain) if domain is not None else spec


# ---------------------------------------------------------------------------
# the two-valued adversary
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TaggedAdversary:
    """Two-valued function observed only through tagged partitions.

    Partition points tagged "hi" take ``hi_value``, points tagged "lo"
    take ``lo_value``.  Alternating the tags models the dense case split
    (rational vs irrational arguments) that makes the underlying function
    a bounded yet infinite-variation witness.
    """

    hi_value: Vec
    lo_value: Vec
    domain: Interval

    def tagged_points(self, n: int) -> list[tuple[float, str]]:
        """Uniform partition with n subintervals, tags alternating from "lo"."""
        if n < 1:
            raise DomainError(f"need at least one subinterval, got {n}")
        pts = uniform_grid(self.domain, n + 1)
        return [(t, "lo" if j % 2 == 0 else "hi") for j, t in enumerate(pts)]

    def value_for_tag(self, tag: str) -> Vec:
        if tag == "hi":
            return self.hi_value
        if tag == "lo":
            return self.lo_value
        raise DomainError(f"unknown tag {tag!r}")

    def tagged_values(self, n: int) -> list[Vec]:
        return [self.value_for_tag(tag) for _, tag in self.tagged_points(n)]


def adversary_partition_sum(adv: TaggedAdversary, p: TwoNormPairing, k: Vec, n: int) -> float:
    """Variation sum of the adversary over its alternating n-interval partition.

    Every consecutive pair differs by +-(hi - lo), so all n terms are
    identical and the sum is exactly n * ||hi - lo, k||.
    """
    points = adv.tagged_points(n)  # validates n and the partition shape
    term = eval_pairing(p, adv.hi_value - adv.lo_value, k)
    return len(points[1:]) * term
