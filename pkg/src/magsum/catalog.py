"""The A_n, D_n, E6, E7, E8 families of generating functions and their maps.

Every family has a potential ``F(x, y) = F0(x, y) + s1*G1(x, y) + s2*G2(x, y)``
and a planar map ``f = (f1, f2)`` whose level set ``f(x, y) = (s1, s2)`` is the
critical set of ``F``.  The lensed images of a target ``s`` are recovered from a
single-variable elimination polynomial ``phi`` and a back-substitution.

Sign conventions
----------------
``A<n>`` carries two germ signs ``(e1, e2)`` for ``e1*x^(n+1) + e2*y^2``.  The
linear source terms are ``-s1*x - s2*y`` as for the other families, plus the
``s2*x^2`` coupling, so that ``f = (e1 (n+1) x^n + ... + 4 e2 x y, 2 e2 y)``.
With this choice ``det Jac f`` equals ``det Hess F`` on the image set for both
values of ``e2``.  Pairing ``+e2*s2*y`` with a map ``-2 e2 y`` instead would
flip the sign of the determinant whenever ``e2 = -1``.

The ``y^7`` coefficient of ``phi_E8`` is ``9 c5^3``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .polynomial import BiPolynomial, Polynomial, RationalFunction, as_rational

__all__ = [
    "FamilySpec",
    "Params",
    "SourcePoint",
    "DegenerateRootError",
    "parse_family",
    "coefficient_indices",
    "potential",
    "potential_terms",
    "lens_map",
    "jacobian_determinant",
    "hessian_determinant",
    "eliminate",
    "back_substitute",
    "magnification_fn",
    "expected_coset_rep",
    "raw_an_potential",
]

KINDS = ("A", "D", "E6", "E7", "E8")
X = BiPolynomial.x()
Y = BiPolynomial.y()


class DegenerateRootError(ArithmeticError):
    """The back-substitution denominator vanishes at a root of phi."""


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    n: int
    signs: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown family kind {self.kind!r}")
        if self.kind == "A" and self.n < 2:
            raise ValueError(f"A_n requires n >= 2, got {self.n}")
        if self.kind == "D" and self.n < 4:
            raise ValueError(f"D_n requires n >= 4, got {self.n}")
        if self.kind.startswith("E") and self.n != int(self.kind[1]):
            raise ValueError(f"{self.kind} has fixed index {self.kind[1]}")
        want = {"A": 2, "D": 1, "E6": 1, "E7": 0, "E8": 0}[self.kind]
        if len(self.signs) != want or any(e not in (1, -1) for e in self.signs):
            raise ValueError(f"{self.kind} expects {want} signs from {{+1, -1}}, got {self.signs}")

    @classmethod
    def make(cls, kind: str, n: int | None = None, signs: Sequence[int] | None = None):
        if kind.startswith("E"):
            n = int(kind[1])
        if signs is None:
            signs = {"A": (1, 1), "D": (1,), "E6": (1,)}.get(kind, ())
        return cls(kind, int(n), tuple(signs))

    @property
    def name(self) -> str:
        tail = "".join("+" if e > 0 else "-" for e in self.signs)
        return f"A{self.n}{tail}" if self.kind == "A" else (
            f"D{self.n}{tail}" if self.kind == "D" else f"{self.kind}{tail}"
        )

    @property
    def degree(self) -> int:
        """Degree of the elimination polynomial, i.e. the maximum image count."""
        return self.n

    @property
    def variable(self) -> str:
        return "x" if self.kind == "A" else "y"

    @property
    def n_params(self) -> int:
        return len(coefficient_indices(self))

    def __str__(self):
        return self.name


_FAMILY_RE = re.compile(r"^(?:A(\d+)([+-]{2})?|D(\d+)([+-])?|E6([+-])?|(E7)|(E8))$")


def parse_family(text: str) -> FamilySpec:
    """Parse ``A<n>[++|+-|-+|--]``, ``D<n>[+|-]``, ``E6[+|-]``, ``E7``, ``E8``."""
    m = _FAMILY_RE.match(text.strip())
    if not m:
        raise ValueError(f"cannot parse family {text!r}")
    a_n, a_s, d_n, d_s, e6_s, e7, e8 = m.groups()
    to_signs = lambda s: tuple(1 if ch == "+" else -1 for ch in s)  # noqa: E731
    if a_n is not None:
        return FamilySpec("A", int(a_n), to_signs(a_s or "++"))
    if d_n is not None:
        return FamilySpec("D", int(d_n), to_signs(d_s or "+"))
    if e7:
        return FamilySpec("E7", 7)
    if e8:
        return FamilySpec("E8", 8)
    return FamilySpec("E6", 6, to_signs(e6_s or "+"))


def coefficient_indices(spec: FamilySpec) -> list[int]:
    """Subscripts ``k`` of the unfolding coefficients ``c_k``, in Params order."""
    if spec.kind == "A":
        return list(range(3, spec.n))
    if spec.kind == "D":
        return list(range(2, spec.n - 1))
    return list(range(1, spec.n - 2))


@dataclass(frozen=True)
class Params:
    c: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "c", tuple(_num(v) for v in self.c))


@dataclass(frozen=True)
class SourcePoint:
    s1: object = Fraction(0)
    s2: object = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "s1", _num(self.s1))
        object.__setattr__(self, "s2", _num(self.s2))

    def __iter__(self):
        return iter((self.s1, self.s2))


def _num(v):
    if isinstance(v, (BiPolynomial, float, complex)):
        return v
    return as_rational(v)


def _params(spec: FamilySpec, params) -> dict[int, object]:
    c = params.c if isinstance(params, Params) else tuple(_num(v) for v in params)
    idx = coefficient_indices(spec)
    if len(c) != len(idx):
        raise ValueError(f"{spec.name} takes {len(idx)} unfolding coefficients, got {len(c)}")
    return dict(zip(idx, c))


def _source(s):
    if isinstance(s, SourcePoint):
        return s.s1, s.s2
    s1, s2 = s
    return _num(s1), _num(s2)


# -- potentials and maps -------------------------------------------------------


def potential_terms(spec: FamilySpec, params) -> tuple[BiPolynomial, BiPolynomial, BiPolynomial]:
    """``(F0, G1, G2)`` with ``F = F0 + s1*G1 + s2*G2``."""
    c = _params(spec, params)
    n = spec.n
    if spec.kind == "A":
        e1, e2 = spec.signs
        F0 = e1 * X ** (n + 1) + e2 * Y ** 2
        for k, ck in c.items():
            F0 = F0 + ck * X ** k
        return F0, -X, X ** 2 - Y
    if spec.kind == "D":
        (e,) = spec.signs
        F0 = X ** 2 * Y + e * Y ** (n - 1)
        for k, ck in c.items():
            F0 = F0 + ck * Y ** k
    elif spec.kind == "E6":
        (e,) = spec.signs
        F0 = X ** 3 + e * Y ** 4 + c[3] * X * Y ** 2 + c[2] * Y ** 2 + c[1] * X * Y
    elif spec.kind == "E7":
        F0 = (X ** 3 + X * Y ** 3 + c[4] * Y ** 4 + c[3] * Y ** 3 + c[2] * Y ** 2
              + c[1] * X * Y)
    else:
        F0 = (X ** 3 + Y ** 5 + c[5] * X * Y ** 3 + c[4] * X * Y ** 2 + c[3] * Y ** 3
              + c[2] * Y ** 2 + c[1] * X * Y)
    return F0, -X, -Y


def potential(spec: FamilySpec, params, s) -> BiPolynomial:
    """Germ plus unfolding, constant term omitted.

    ``s`` components may be numbers or BiPolynomials (for substitution tests).
    """
    s1, s2 = _source(s)
    F0, G1, G2 = potential_terms(spec, params)
    return F0 + G1 * s1 + G2 * s2


def raw_an_potential(spec: FamilySpec, params, s) -> BiPolynomial:
    """A_n potential before the ``y -> y + c2/2`` shift, ``c1 = -s1``, ``c2 = s2``."""
    if spec.kind != "A":
        raise ValueError("raw form exists for A_n only")
    s1, s2 = _source(s)
    c = _params(spec, params)
    e1, e2 = spec.signs
    F = e1 * X ** (spec.n + 1) + e2 * Y ** 2 + s2 * X ** 2 - s1 * X
    for k, ck in c.items():
        F = F + ck * X ** k
    return F


def lens_map(spec: FamilySpec, params) -> tuple[BiPolynomial, BiPolynomial]:
    c = _params(spec, params)
    n = spec.n
    if spec.kind == "A":
        e1, e2 = spec.signs
        f1 = e1 * (n + 1) * X ** n + 4 * e2 * X * Y
        for k, ck in c.items():
            f1 = f1 + k * ck * X ** (k - 1)
        return f1, 2 * e2 * Y
    if spec.kind == "D":
        (e,) = spec.signs
        f2 = X ** 2 + e * (n - 1) * Y ** (n - 2)
        for k, ck in c.items():
            f2 = f2 + k * ck * Y ** (k - 1)
        return 2 * X * Y, f2
    if spec.kind == "E6":
        (e,) = spec.signs
        return (3 * X ** 2 + c[3] * Y ** 2 + c[1] * Y,
                4 * e * Y ** 3 + 2 * c[3] * X * Y + 2 * c[2] * Y + c[1] * X)
    if spec.kind == "E7":
        return (3 * X ** 2 + Y ** 3 + c[1] * Y,
                3 * X * Y ** 2 + 4 * c[4] * Y ** 3 + 3 * c[3] * Y ** 2 + 2 * c[2] * Y + c[1] * X)
    return (3 * X ** 2 + c[5] * Y ** 3 + c[4] * Y ** 2 + c[1] * Y,
            5 * Y ** 4 + 3 * c[5] * X * Y ** 2 + 2 * c[4] * X * Y + 3 * c[3] * Y ** 2
            + 2 * c[2] * Y + c[1] * X)


def jacobian_determinant(spec: FamilySpec, params) -> BiPolynomial:
    f1, f2 = lens_map(spec, params)
    return f1.diff("x") * f2.diff("y") - f1.diff("y") * f2.diff("x")


def hessian_determinant(F: BiPolynomial) -> BiPolynomial:
    Fx, Fy = F.diff("x"), F.diff("y")
    Fxy = Fx.diff("y")
    return Fx.diff("x") * Fy.diff("y") - Fxy * Fxy


# -- elimination -----------------------------------------------------------------


def eliminate(spec: FamilySpec, params, s) -> tuple[Polynomial, str]:
    """Elimination polynomial ``phi`` and the variable it is written in."""
    c = _params(spec, params)
    s1, s2 = _source(s)
    n = spec.n
    if spec.kind == "A":
        e1, _ = spec.signs
        coeffs = [Fraction(0)] * (n + 1)
        coeffs[n] = e1 * (n + 1)
        for k, ck in c.items():
            coeffs[k - 1] += k * ck
        coeffs[1] += 2 * s2
        coeffs[0] += -s1
        return Polynomial(coeffs), "x"
    if spec.kind == "D":
        (e,) = spec.signs
        coeffs = [Fraction(0)] * (n + 1)
        coeffs[n] = 4 * e * (n - 1)
        for k, ck in c.items():
            coeffs[k + 1] += 4 * k * ck
        coeffs[2] += -4 * s2
        coeffs[0] += s1 * s1
        return Polynomial(coeffs), "y"
    if spec.kind == "E6":
        # x * (2 c3 y + c1) = s2 - 4e y^3 - 2 c2 y, then 3 x^2 = s1 - c3 y^2 - c1 y
        (e,) = spec.signs
        num = Polynomial((s2, -2 * c[2], 0, -4 * e))
        den = Polynomial((c[1], 2 * c[3]))
        rest = Polynomial((-s1, c[1], c[3]))
        return 3 * num * num + rest * den * den, "y"
    if spec.kind == "E7":
        c1, c2, c3, c4 = c[1], c[2], c[3], c[4]
        return Polynomial((
            -c1 ** 2 * s1 + 3 * s2 ** 2,
            c1 ** 3 - 12 * c2 * s2,
            12 * c2 ** 2 - 6 * c1 * s1 - 18 * c3 * s2,
            7 * c1 ** 2 + 36 * c2 * c3 - 24 * c4 * s2,
            27 * c3 ** 2 + 48 * c2 * c4 - 9 * s1,
            15 * c1 + 72 * c3 * c4,
            48 * c4 ** 2,
            9,
        )), "y"
    c1, c2, c3, c4, c5 = c[1], c[2], c[3], c[4], c[5]
    return Polynomial((
        -c1 ** 2 * s1 + 3 * s2 ** 2,
        c1 ** 3 - 4 * c1 * c4 * s1 - 12 * c2 * s2,
        12 * c2 ** 2 + 5 * c1 ** 2 * c4 - 4 * c4 ** 2 * s1 - 6 * c1 * c5 * s1 - 18 * c3 * s2,
        36 * c2 * c3 + 8 * c1 * c4 ** 2 + 7 * c1 ** 2 * c5 - 12 * c4 * c5 * s1,
        27 * c3 ** 2 + 4 * c4 ** 3 + 22 * c1 * c4 * c5 - 9 * c5 ** 2 * s1 - 30 * s2,
        60 * c2 + 16 * c4 ** 2 * c5 + 15 * c1 * c5 ** 2,
        90 * c3 + 21 * c4 * c5 ** 2,
        9 * c5 ** 3,
        75,
    )), "y"


def _relations(spec: FamilySpec, params, s):
    """For D and E: ``x = (s_lin - l0(y)) / l1(y)`` and ``x^2 = (s_quad - q0(y)) / q2``.

    Returns ``(lin_num, l1, quad_rhs)`` as univariate polynomials in ``y``.
    """
    f1, f2 = lens_map(spec, params)
    s1, s2 = _source(s)
    if spec.kind == "D":
        lin, s_lin, quad, s_quad = f1, s1, f2, s2
    else:
        lin, s_lin, quad, s_quad = f2, s2, f1, s1
    zero = Polynomial()
    lc = lin.coeffs_in("x")
    qc = quad.coeffs_in("x")
    if set(lc) - {0, 1} or set(qc) - {0, 2} or qc[2].degree != 0:
        raise AssertionError(f"unexpected map shape for {spec.name}")
    if 1 not in lc:
        raise ValueError(f"{spec.name}: degenerate parameters, x drops out of the map")
    lin_num = s_lin - lc.get(0, zero)
    quad_rhs = (s_quad - qc.get(0, zero)) / qc[2].lc
    return lin_num, lc[1], quad_rhs


def back_substitute(spec: FamilySpec, params, s, root, den_tol: float = 1e-12):
    """Recover ``(x, y)`` from a root of ``phi``.

    Raises DegenerateRootError when the denominator of the back-substitution
    vanishes at the root (``y = 0`` for D_n, ``2 c3 y + c1`` for E6,
    ``3 y^2 + c1`` for E7, ``3 c5 y^2 + 2 c4 y + c1`` for E8).
    """
    s1, s2 = _source(s)
    if spec.kind == "A":
        _, e2 = spec.signs
        return root, s2 / (2 * e2)
    lin_num, den, _ = _relations(spec, params, s)
    d = den(root)
    if isinstance(d, Fraction):
        degenerate = d == 0
    else:
        scale = 1 + sum(abs(complex(a)) * abs(root) ** k for k, a in enumerate(den.coeffs))
        degenerate = abs(d) <= den_tol * scale
    if degenerate:
        raise DegenerateRootError(f"{spec.name}: back-substitution denominator vanishes at y={root}")
    return lin_num(root) / d, root


def magnification_fn(spec: FamilySpec, params, s) -> RationalFunction:
    """Signed magnification ``1/det Jac f`` as a function of the elimination variable.

    A_n: ``y`` is fixed by the second map component.  D_n and E_n: ``x^2`` is
    replaced using the component quadratic in ``x``, then ``x`` using the
    component linear in ``x``.
    """
    J = jacobian_determinant(spec, params)
    s1, s2 = _source(s)
    if spec.kind == "A":
        _, e2 = spec.signs
        return RationalFunction(1, J.substitute(y=s2 / (2 * e2)).to_polynomial("x"))
    lin_num, l1, quad_rhs = _relations(spec, params, s)
    # reduce J(x, y) = sum_k J_k(y) x^k to A0(y) + A1(y) x using x^2 = quad_rhs
    reduced = [Polynomial(), Polynomial()]
    for k, Jk in sorted(J.coeffs_in("x").items()):
        term, power = Jk, k
        while power >= 2:
            term, power = term * quad_rhs, power - 2
        reduced[power] = reduced[power] + term
    A0, A1 = reduced
    return RationalFunction(l1, A0 * l1 + A1 * lin_num)


def expected_coset_rep(spec: FamilySpec, params) -> Polynomial | None:
    """Closed-form reduction of ``phi' * M`` modulo ``phi``; None for E6."""
    c = _params(spec, params)
    if spec.kind == "A":
        return Polynomial((Fraction(spec.signs[1], 2),))
    if spec.kind == "D":
        return Polynomial((0, 2))
    if spec.kind == "E7":
        return Polynomial((-c[1], 0, -3))
    if spec.kind == "E8":
        return Polynomial((-c[1], -2 * c[4], -3 * c[5]))
    return None
