"""Counting invariants of quiver moduli.

The generating rational functions attached to slope-filtered ordered
decompositions, the Betti polynomial of the moduli space in the coprime
case, q-Donaldson-Thomas invariants extracted with the plethystic
logarithm, and the two independent routes to the intersection-cohomology
Poincare polynomial:

* the DT route, a sign-twisted DT invariant, valid when the form is
  symmetric on the kernel of the stability;
* the resolution route, the coprime Betti polynomial for a generic
  deformation of the stability.

Both are exact and must agree whenever their shared hypotheses hold.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    DEFAULT_MAX_BOX,
    DimVector,
    Quiver,
    Stability,
    box_iter,
    check_box,
    is_coprime,
    normalize_stability,
    slope,
    symmetric_on_kernel,
)
from .deform import is_generic_deformation
from .errors import InternalCheckError, PreconditionError
from .halfq import HalfLaurent, RatFunc, SlopeSeries, pleth_log


@dataclass(frozen=True)
class OrderedDecomposition:
    """Ordered tuple of nonzero dimension vectors summing to a fixed total.

    Stored together with the stability whose partial-sum slope condition
    selected it.
    """

    parts: tuple[DimVector, ...]
    stability: Stability

    @property
    def length(self) -> int:
        return len(self.parts)

    def total(self) -> DimVector:
        out = self.parts[0]
        for p in self.parts[1:]:
            out = out + p
        return out


def hn_decompositions(
    d: DimVector, theta: Stability, max_box: int = DEFAULT_MAX_BOX
) -> list[OrderedDecomposition]:
    """Ordered decompositions whose proper partial sums have slope > slope(d).

    Every tuple (d^1, ..., d^s) of nonzero vectors with sum d such that
    slope(d^1 + ... + d^k) > slope(d) for all k < s. Enumeration is
    depth-first with parts in ascending lexicographic order, so the output
    order is deterministic; the one-part decomposition (d) always occurs.
    """
    if d.is_zero:
        raise ValueError("zero dimension vector")
    check_box(d, max_box)
    mu_d = slope(theta, d)
    normalized = theta(d) == 0
    results: list[OrderedDecomposition] = []

    def extend(prefix: tuple[DimVector, ...], acc: DimVector) -> None:
        remaining = d - acc
        for p in box_iter(remaining):
            if p.is_zero:
                continue
            acc2 = acc + p
            if acc2 == d:
                results.append(OrderedDecomposition(prefix + (p,), theta))
                continue
            keep = slope(theta, acc2) > mu_d
            if normalized and keep != (theta(acc2) > 0):
                # with theta(d) = 0 the slope condition must reduce to positivity
                raise InternalCheckError("slope and weight forms of the condition disagree")
            if keep:
                extend(prefix + (p,), acc2)

    extend((), DimVector((0,) * len(d)))
    return results


def p_poly(
    q: Quiver, d: DimVector, theta: Stability, max_box: int = DEFAULT_MAX_BOX
) -> RatFunc:
    """Alternating sum of weighted terms over hn_decompositions(d, theta).

    Each decomposition (d^1, ..., d^s) contributes

        (-1)^(s-1) * q^(-sum_{k<=l} form(d^l, d^k))
                   * prod_k prod_i prod_{j=1}^{d^k_i} (1 - q^{-j})^{-1},

    assembled exactly as a rational function in v (q = v^2).
    """
    total = RatFunc.zero()
    for dec in hn_decompositions(d, theta, max_box):
        parts = dec.parts
        s = len(parts)
        expo = sum(
            q.euler_form(parts[l], parts[k]) for l in range(s) for k in range(l + 1)
        )
        den = HalfLaurent.one()
        for part in parts:
            for di in part:
                for j in range(1, di + 1):
                    den = den * (HalfLaurent.one() - HalfLaurent.monomial(-2 * j))
        num = HalfLaurent.monomial(-2 * expo, (-1) ** (s - 1))
        total = total + RatFunc.from_ratio(num, den)
    return total


def _require_q_polynomial(value: RatFunc, what: str) -> HalfLaurent:
    if not value.is_laurent:
        raise InternalCheckError(f"{what} has a nontrivial denominator: {value.pretty()}")
    lau = value.as_laurent()
    if not lau.is_q_polynomial():
        raise InternalCheckError(f"{what} is not a polynomial in q: {lau.pretty()}")
    if not lau.has_integer_coefficients():
        raise InternalCheckError(f"{what} has non-integer coefficients: {lau.pretty()}")
    return lau


def betti_coprime(
    q: Quiver, d: DimVector, theta: Stability, max_box: int = DEFAULT_MAX_BOX
) -> HalfLaurent:
    """Poincare polynomial (q - 1) * p_poly in the coprime case.

    Coefficient of q^i is the i-th compactly supported Betti number of the
    moduli space, provided it is nonempty; nonemptiness is assumed, not
    checked. Requires d to be coprime for the normalized stability.
    """
    tnorm = normalize_stability(theta, d)
    if not is_coprime(tnorm, d, max_box):
        raise PreconditionError("stability not coprime for d")
    value = (RatFunc.q_power(1) - 1) * p_poly(q, d, theta, max_box)
    return _require_q_polynomial(value, "(q - 1) * p")


def dt_invariants(
    q: Quiver, theta: Stability, d: DimVector, max_box: int = DEFAULT_MAX_BOX
) -> dict[DimVector, RatFunc]:
    """q-Donaldson-Thomas invariants for all slope-zero exponents up to d.

    Builds the generating series 1 + sum (-v)^(form(e,e)) p_e t^e over
    nonzero e <= d with normalized weight zero, applies the plethystic
    logarithm and rescales by q^(-1/2) - q^(1/2). Returns the coefficient
    at every such exponent.
    """
    tnorm = normalize_stability(theta, d)
    check_box(d, max_box)
    exponents = [e for e in box_iter(d) if not e.is_zero and tnorm(e) == 0]
    zero = DimVector((0,) * len(d))
    terms: dict[DimVector, RatFunc] = {zero: RatFunc.one()}
    for e in exponents:
        se = q.euler_form(e, e)
        sign_twist = RatFunc.v_power(se) * (1 if se % 2 == 0 else -1)
        terms[e] = sign_twist * p_poly(q, e, tnorm, max_box)
    series = SlopeSeries(d, terms)
    rescale = RatFunc.v_power(-1) - RatFunc.v_power(1)
    dt_series = pleth_log(series) * rescale
    return {e: dt_series.coefficient(e) for e in exponents}


def ic_poincare_dt(
    q: Quiver, d: DimVector, theta: Stability, max_box: int = DEFAULT_MAX_BOX
) -> HalfLaurent:
    """Intersection-cohomology Poincare polynomial via the DT invariant.

    Returns (-v)^(1 - form(d, d)) * DT_d, which must come out a polynomial
    in q with integer coefficients. Requires the form to be symmetric on
    the kernel of the normalized stability; nonemptiness of the moduli
    space is assumed, not checked.
    """
    tnorm = normalize_stability(theta, d)
    if not symmetric_on_kernel(q, tnorm):
        raise PreconditionError(
            "form is not symmetric on the kernel of the stability"
        )
    dt_d = dt_invariants(q, theta, d, max_box)[d]
    k = 1 - q.euler_form(d, d)
    value = RatFunc.v_power(k) * (1 if k % 2 == 0 else -1) * dt_d
    return _require_q_polynomial(value, "sign-twisted DT invariant")


def ic_poincare_resolution(
    q: Quiver,
    d: DimVector,
    theta: Stability,
    theta_prime: Stability,
    max_box: int = DEFAULT_MAX_BOX,
) -> HalfLaurent:
    """Intersection-cohomology Poincare polynomial via a small resolution.

    For a generic deformation theta_prime of theta this equals the coprime
    Betti polynomial of the deformed stability. Requires the deformation
    check to pass and the form to be symmetric on the kernel of the
    normalized stability; nonemptiness of the stable locus is assumed.
    """
    tnorm = normalize_stability(theta, d)
    verdict = is_generic_deformation(tnorm, theta_prime, d, max_box)
    if not verdict.passed:
        raise PreconditionError(
            f"deformed stability is not a generic deformation: {verdict.violations[:3]}"
        )
    if not symmetric_on_kernel(q, tnorm):
        raise PreconditionError(
            "form is not symmetric on the kernel of the stability"
        )
    return betti_coprime(q, d, theta_prime, max_box)
