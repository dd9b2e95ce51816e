"""Two-norm pairings on finite-dimensional complex vector spaces.

A pairing maps (a, b) with a in A = C^m and b in B = C^n to a value
||a, b|| >= 0 and is expected to satisfy

  G1:  ||alpha*a, b|| = |alpha| ||a, b|| = ||a, alpha*b||
  G2:  ||a, b + c||  <= ||a, b|| + ||a, c||
  G3:  ||a + b, c||  <= ||a, c|| + ||b, c||

on its admissible set W, a subset of A x B whose slices are subspaces.
The default W is all of A x B.  Symmetric pairings (square, with
||a, b|| = ||b, a||) subsume the classical two-norms on a single space:
take W = X x X and the symmetry axiom comes for free.

Nothing here is checked at construction time; the axioms module samples
them at runtime instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .errors import DimensionMismatch, MembershipError

# Floating-point comparison policy used throughout the package.  Values
# are doubles; equalities hold only up to roundoff.
RELTOL = 1e-9
ABSTOL = 1e-12


def close(x: float, y: float, reltol: float = RELTOL, abstol: float = ABSTOL) -> bool:
    """Approximate equality with relative tolerance and absolute floor."""
    return abs(x - y) <= max(abstol, reltol * max(abs(x), abs(y)))


def leq_slack(lhs: float, rhs: float, reltol: float = ABSTOL, abstol: float = ABSTOL) -> bool:
    """Inequality lhs <= rhs up to roundoff slack.

    Fails only when lhs > rhs + max(abstol, reltol * max(lhs, rhs)).
    """
    return lhs <= rhs + max(abstol, reltol * max(abs(lhs), abs(rhs)))


@dataclass(frozen=True, slots=True)
class Vec:
    """Vector in C^n with componentwise arithmetic."""

    components: tuple[complex, ...]

    def __post_init__(self):
        if len(self.components) < 1:
            raise DimensionMismatch("vector needs at least one component")
        object.__setattr__(
            self, "components", tuple(complex(c) for c in self.components)
        )

    @property
    def dim(self) -> int:
        return len(self.components)

    @classmethod
    def zero(cls, dim: int) -> "Vec":
        return cls((0j,) * dim)

    def __add__(self, other: "Vec") -> "Vec":
        self._check_same_dim(other)
        return Vec(tuple(x + y for x, y in zip(self.components, other.components)))

    def __sub__(self, other: "Vec") -> "Vec":
        self._check_same_dim(other)
        return Vec(tuple(x - y for x, y in zip(self.components, other.components)))

    def __mul__(self, scalar: complex) -> "Vec":
        return Vec(tuple(scalar * x for x in self.components))

    __rmul__ = __mul__

    def __neg__(self) -> "Vec":
        return Vec(tuple(-x for x in self.components))

    def _check_same_dim(self, other: "Vec") -> None:
        if self.dim != other.dim:
            raise DimensionMismatch(
                f"vector dimensions differ: {self.dim} vs {other.dim}"
            )


def vec(*components: complex) -> Vec:
    """Convenience constructor: vec(3, 4) -> Vec((3+0j, 4+0j))."""
    return Vec(tuple(components))


# scalar kernels on bare component tuples (the fast path used by the
# refinement engine; the Vec-level wrappers add the checks)
RawKernel = Callable[[tuple[complex, ...], tuple[complex, ...]], float]
RawKernel1 = Callable[[tuple[complex, ...]], float]


@dataclass(frozen=True)
class Seminorm:
    """Norm-like functional that may have a nontrivial kernel.

    Required properties: absolute homogeneity, triangle inequality,
    value 0 at the origin.  Definiteness is deliberately not required.
    """

    name: str
    dim: int
    raw: RawKernel1

    def __call__(self, x: Vec) -> float:
        if x.dim != self.dim:
            raise DimensionMismatch(
                f"seminorm {self.name!r} expects dim {self.dim}, got {x.dim}"
            )
        return self.raw(x.components)

    # Vec-level alias mirroring TwoNormPairing.evaluate
    def evaluate(self, x: Vec) -> float:
        return self(x)


@dataclass(frozen=True)
class TwoNormPairing:
    """A map (a, b) -> ||a, b|| on W, a subset of C^dim_a x C^dim_b.

    ``raw`` is the scalar kernel on component tuples; ``evaluate`` wraps
    it with dimension and membership checks.  ``in_w`` of None means the
    admissible set is the full product.
    """

    name: str
    dim_a: int
    dim_b: int
    raw: RawKernel
    in_w: Callable[[Vec, Vec], bool] | None = None

    def contains(self, a: Vec, b: Vec) -> bool:
        return True if self.in_w is None else self.in_w(a, b)

    def evaluate(self, a: Vec, b: Vec) -> float:
        if a.dim != self.dim_a or b.dim != self.dim_b:
            raise DimensionMismatch(
                f"pairing {self.name!r} expects dims ({self.dim_a}, {self.dim_b}), "
                f"got ({a.dim}, {b.dim})"
            )
        if not self.contains(a, b):
            raise MembershipError(
                f"pair is outside the admissible set of {self.name!r}"
            )
        return self.raw(a.components, b.components)

    __call__ = evaluate


def eval_pairing(p: TwoNormPairing, a: Vec, b: Vec) -> float:
    """||a, b|| under p, with dimension and membership checks."""
    return p.evaluate(a, b)


# ---------------------------------------------------------------------------
# built-in pairings and seminorms
# ---------------------------------------------------------------------------

def euclidean_modulus() -> TwoNormPairing:
    """The pairing ||(w1, w2), k|| = sqrt(|w1|^2 + |w2|^2) * |k| on C^2 x C."""

    def kernel(a: tuple[complex, ...], b: tuple[complex, ...]) -> float:
        return math.hypot(abs(a[0]), abs(a[1])) * abs(b[0])

    return TwoNormPairing(name="euclidean-modulus", dim_a=2, dim_b=1, raw=kernel)


def euclidean_seminorm(dim: int, name: str = "euclidean") -> Seminorm:
    """The l2 norm on C^dim (a genuine norm, hence also a seminorm)."""

    def kernel(xs: tuple[complex, ...]) -> float:
        return math.sqrt(sum(abs(x) ** 2 for x in xs))

    return Seminorm(name=name, dim=dim, raw=kernel)


def modulus_seminorm() -> Seminorm:
    """Complex modulus on C."""
    return Seminorm(name="modulus", dim=1, raw=lambda xs: abs(xs[0]))


def coordinate_seminorm(dim: int, index: int) -> Seminorm:
    """|x_index| on C^dim: homogeneous and subadditive, with a kernel."""
    if not 0 <= index < dim:
        raise DimensionMismatch(f"coordinate {index} out of range for dim {dim}")
    return Seminorm(name=f"coord[{index}]", dim=dim, raw=lambda xs: abs(xs[index]))


def seminorm_product(sa: Seminorm, sb: Seminorm, name: str | None = None) -> TwoNormPairing:
    """||a, b|| = sa(a) * sb(b); a generalized two-norm for any seminorms."""

    def kernel(a: tuple[complex, ...], b: tuple[complex, ...]) -> float:
        return sa.raw(a) * sb.raw(b)

    return TwoNormPairing(
        name=name or f"product({sa.name},{sb.name})",
        dim_a=sa.dim,
        dim_b=sb.dim,
        raw=kernel,
    )


def modulus_product() -> TwoNormPairing:
    """||a, b|| = |a| * |b| on C x C."""
    return seminorm_product(modulus_seminorm(), modulus_seminorm(),
                            name="modulus-product")


def broken_g3() -> TwoNormPairing:
    """Deliberately defective pairing |w1|^2 * |k|: violates G1 and G3.

    Counterexample to G3: a = b = (1, 0), k = 1 gives |2|^2 = 4 > 1 + 1.
    Used to exercise the axiom harness' failure reporting.
    """

    def kernel(a: tuple[complex, ...], b: tuple[complex, ...]) -> float:
        return abs(a[0]) ** 2 * abs(b[0])

    return TwoNormPairing(name="broken-g3", dim_a=2, dim_b=1, raw=kernel)


PAIRING_FACTORIES: dict[str, Callable[[], TwoNormPairing]] = {
    "euclidean-modulus": euclidean_modulus,
    "modulus-product": modulus_product,
    "broken-g3": broken_g3,
}


def pairing_by_name(name: str) -> TwoNormPairing:
    try:
        return PAIRING_FACTORIES[name]()
    except KeyError:
        known = ", ".join(sorted(PAIRING_FACTORIES))
        raise MembershipError(f"unknown pairing {name!r}; known: {known}") from None


def reverse_triangle_gap(p: TwoNormPairing, a: Vec, b: Vec, c: Vec) -> tuple[float, float]:
    """Return (| ||a,c|| - ||b,c|| |, ||a-b, c||).

    For any generalized two-norm the first component never exceeds the
    second (up to roundoff): the reverse triangle inequality.
    """
    return abs(p.evaluate(a, c) - p.evaluate(b, c)), p.evaluate(a - b, c)
