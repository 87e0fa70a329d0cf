"""Sums of a rational function over the roots of a polynomial.

For square-free ``phi`` of degree ``n`` and ``h`` defined at its roots,

    sum_i h(x_i) = b_{n-1} / a_n,

where ``a_n`` is the leading coefficient of ``phi`` and ``b_{n-1}`` is the
coefficient of ``x^{n-1}`` in the reduction of ``phi' * h`` modulo ``phi``.
``trace_sum`` evaluates the right-hand side in exact arithmetic;
``numeric_trace_oracle`` evaluates the left-hand side from numeric roots.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .polynomial import NotInvertibleError, Polynomial, RationalFunction, gcd, mod_inverse
from .roots import complex_roots

__all__ = [
    "RepeatedRootsError",
    "PoleError",
    "TraceReport",
    "coset_representative",
    "trace_sum",
    "numeric_trace_oracle",
]


class RepeatedRootsError(ValueError):
    """phi is not square-free."""


class PoleError(ZeroDivisionError):
    """h has a pole at a root of phi."""


@dataclass(frozen=True)
class TraceReport:
    coset_rep: Polynomial
    b_top: Fraction
    a_lead: Fraction
    value: Fraction


def _as_rational_function(h) -> RationalFunction:
    if isinstance(h, RationalFunction):
        return h
    return RationalFunction(h)


def coset_representative(phi: Polynomial, h) -> Polynomial:
    """The unique polynomial of degree below ``deg phi`` congruent to ``phi' * h``.

    Raises RepeatedRootsError for non-square-free ``phi`` and PoleError when
    the denominator of ``h`` vanishes at a root of ``phi``.
    """
    phi = Polynomial(phi)
    h = _as_rational_function(h)
    if phi.degree < 1:
        raise ValueError("phi must have positive degree")
    dphi = phi.derivative()
    if gcd(phi, dphi).degree > 0:
        raise RepeatedRootsError("phi has a repeated root")
    try:
        inv = mod_inverse(h.den, phi)
    except NotInvertibleError as exc:
        raise PoleError(f"h is undefined at a root of phi: {exc}") from None
    return ((dphi * h.num) % phi) * inv % phi


def trace_sum(phi: Polynomial, h) -> TraceReport:
    phi = Polynomial(phi)
    rep = coset_representative(phi, h)
    b_top = rep[phi.degree - 1]
    a_lead = phi.lc
    return TraceReport(coset_rep=rep, b_top=b_top, a_lead=a_lead, value=b_top / a_lead)


def numeric_trace_oracle(phi: Polynomial, h, tol: float = 1e-9) -> complex:
    """Brute-force ``sum_i h(x_i)`` over numerically computed roots.

    ``tol`` is forwarded to the root finder.  A denominator smaller than
    ``1e-300`` at a root is treated as a pole.
    """
    h = _as_rational_function(h)
    num, den = h.num.to_complex(), h.den.to_complex()
    values = []
    for r in complex_roots(phi, tol=tol):
        d = den(r)
        if abs(d) < 1e-300:
            raise PoleError(f"h has a pole at root {r}")
        values.append(num(r) / d)
    return complex(math.fsum(v.real for v in values), math.fsum(v.imag for v in values))
