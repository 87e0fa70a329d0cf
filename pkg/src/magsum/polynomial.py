"""Dense univariate and sparse bivariate polynomials.

Coefficients are exact ``fractions.Fraction`` values by default.  Floats and
complex numbers are accepted as well, which gives the numeric instantiation
used by the root finder; every operation below is written against the plain
number protocol so both kinds share one interface.

A univariate polynomial ``a_0 + a_1 x + ... + a_n x^n`` is stored as the tuple
``(a_0, ..., a_n)`` with ``a_n != 0``; the zero polynomial is the empty tuple
and has degree -1.
"""

from __future__ import annotations

import numbers
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "Polynomial",
    "BiPolynomial",
    "RationalFunction",
    "NotInvertibleError",
    "DegenerateResultantError",
    "as_rational",
    "extended_gcd",
    "gcd",
    "mod_inverse",
    "determinant",
    "univariate_resultant",
    "resultant",
    "discriminant",
    "interpolate",
]


class NotInvertibleError(ArithmeticError):
    """The polynomial shares a root with the modulus."""


class DegenerateResultantError(ValueError):
    """An input has degree zero in the variable being eliminated."""


def as_rational(value) -> Fraction:
    """Convert ints, strings such as ``"3/4"`` and Fractions to a Fraction.

    Floats are converted exactly (binary expansion), never rounded.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        return Fraction(int(value))
    if isinstance(value, (int, str, float)):
        return Fraction(value)
    if isinstance(value, numbers.Rational):
        return Fraction(value.numerator, value.denominator)
    raise TypeError(f"cannot convert {value!r} to a rational")


def _coerce(a):
    if isinstance(a, Fraction):
        return a
    if isinstance(a, (bool, int, str)):
        return Fraction(a)
    if isinstance(a, numbers.Rational):
        return Fraction(a.numerator, a.denominator)
    if isinstance(a, numbers.Real):
        return float(a)
    if isinstance(a, numbers.Complex):
        return complex(a)
    raise TypeError(f"unsupported coefficient {a!r}")


def _trim(c: list) -> tuple:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class Polynomial:
    """Immutable dense univariate polynomial."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        if isinstance(coeffs, Polynomial):
            object.__setattr__(self, "coeffs", coeffs.coeffs)
            return
        object.__setattr__(self, "coeffs", _trim([_coerce(a) for a in coeffs]))

    @classmethod
    def _raw(cls, coeffs: list) -> "Polynomial":
        p = cls.__new__(cls)
        object.__setattr__(p, "coeffs", _trim(coeffs))
        return p

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def constant(cls, a) -> "Polynomial":
        return cls((a,))

    @classmethod
    def monomial(cls, degree: int, coeff=1) -> "Polynomial":
        return cls([0] * degree + [coeff])

    @classmethod
    def from_roots(cls, roots: Iterable, lead=1) -> "Polynomial":
        p = cls.constant(lead)
        for r in roots:
            p = p * cls((-_coerce(r), 1))
        return p

    # -- basic accessors ---------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        """Leading coefficient (0 for the zero polynomial)."""
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, k: int):
        if k < 0:
            raise IndexError("negative power")
        return self.coeffs[k] if k < len(self.coeffs) else Fraction(0)

    def __len__(self):
        return len(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    @property
    def is_exact(self) -> bool:
        return all(isinstance(a, Fraction) for a in self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, numbers.Number):
            return self.coeffs == _trim([other])
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    # -- ring operations ---------------------------------------------------

    @staticmethod
    def _lift(other) -> "Polynomial | None":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, numbers.Number) or isinstance(other, str):
            return Polynomial((other,))
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        c = list(a)
        for i, bi in enumerate(b):
            c[i] = c[i] + bi
        return Polynomial._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw([-a for a in self.coeffs])

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, numbers.Number):
            other = _coerce(other)
            return Polynomial._raw([a * other for a in self.coeffs])
        if not isinstance(other, Polynomial):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial()
        c = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                c[i + j] += ai * bj
        return Polynomial._raw([_coerce(v) if isinstance(v, int) else v for v in c])

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial((1,))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        # division by a scalar only; use divmod for polynomial division
        if isinstance(other, numbers.Number):
            other = _coerce(other)
            if other == 0:
                raise ZeroDivisionError("division by zero scalar")
            return Polynomial._raw([a / other for a in self.coeffs])
        return NotImplemented

    def __divmod__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return poly_divmod(self, o)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    # -- calculus and evaluation -------------------------------------------

    def __call__(self, x):
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def derivative(self) -> "Polynomial":
        return Polynomial._raw([k * a for k, a in enumerate(self.coeffs)][1:])

    def monic(self) -> "Polynomial":
        if not self.coeffs:
            return self
        return self / self.lc

    def compose(self, inner: "Polynomial") -> "Polynomial":
        acc = Polynomial()
        for a in reversed(self.coeffs):
            acc = acc * inner + a
        return acc

    def to_complex(self) -> "Polynomial":
        """Numeric instantiation with complex double coefficients."""
        return Polynomial._raw([complex(a) for a in self.coeffs])

    def __repr__(self):
        return f"Polynomial({list(map(str, self.coeffs))})"

    def to_string(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            a = self.coeffs[k]
            if a == 0:
                continue
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if mono and a == 1:
                terms.append(mono)
            elif mono and a == -1:
                terms.append("-" + mono)
            elif mono:
                terms.append(f"({a})*{mono}" if isinstance(a, complex) else f"{a}*{mono}")
            else:
                terms.append(str(a))
        return " + ".join(terms).replace("+ -", "- ")

    __str__ = to_string


def poly_divmod(a: Polynomial, b: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Long division: ``a = q*b + r`` with ``deg r < deg b``."""
    if not b.coeffs:
        raise ZeroDivisionError("division by the zero polynomial")
    db = b.degree
    r = list(a.coeffs)
    if len(r) <= db:
        return Polynomial(), a
    lead = b.coeffs[-1]
    q = [Fraction(0)] * (len(r) - db)
    bc = b.coeffs
    for k in range(len(r) - 1, db - 1, -1):
        t = r[k] / lead
        if t == 0:
            continue
        q[k - db] = t
        for j in range(db + 1):
            r[k - db + j] -= t * bc[j]
        r[k] = 0 * t  # exact cancellation of the leading term
    return Polynomial._raw(q), Polynomial._raw(r[:db])


def extended_gcd(a: Polynomial, b: Polynomial) -> tuple[Polynomial, Polynomial, Polynomial]:
    """Return ``(g, u, v)`` with ``u*a + v*b = g`` and ``g`` monic."""
    a, b = Polynomial(a), Polynomial(b)
    if not a and not b:
        raise ValueError("gcd of two zero polynomials is undefined")
    r0, r1 = a, b
    u0, u1 = Polynomial((1,)), Polynomial()
    v0, v1 = Polynomial(), Polynomial((1,))
    while r1:
        q, r = poly_divmod(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    lead = r0.lc
    return r0 / lead, u0 / lead, v0 / lead


def gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    r0, r1 = Polynomial(a), Polynomial(b)
    if not r0 and not r1:
        raise ValueError("gcd of two zero polynomials is undefined")
    while r1:
        r0, r1 = r1, poly_divmod(r0, r1)[1]
    return r0.monic()


def mod_inverse(b: Polynomial, phi: Polynomial) -> Polynomial:
    """Inverse of ``b`` in ``Q[x]/(phi)``, reduced to degree below ``deg phi``.

    Raises NotInvertibleError when ``gcd(b, phi)`` is not constant.
    """
    b, phi = Polynomial(b), Polynomial(phi)
    if phi.degree < 1:
        raise ValueError("modulus must have positive degree")
    # Euclid tracking only the cofactor of b
    r0, r1 = phi, b % phi
    v0, v1 = Polynomial(), Polynomial((1,))
    while r1:
        q, r = poly_divmod(r0, r1)
        r0, r1 = r1, r
        v0, v1 = v1, v0 - q * v1
    if r0.degree != 0:
        raise NotInvertibleError(
            f"gcd has degree {r0.degree}; the polynomial vanishes at a root of the modulus"
        )
    return (v0 / r0.lc) % phi


def determinant(rows: Sequence[Sequence]) -> object:
    """Determinant by Gaussian elimination.

    Exact for Fraction entries; partial pivoting on magnitude otherwise.
    """
    m = [list(map(_coerce, row)) for row in rows]
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix must be square")
    if n == 0:
        return Fraction(1)
    exact = all(isinstance(v, Fraction) for row in m for v in row)
    det = Fraction(1)
    for col in range(n):
        if exact:
            piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        else:
            piv = max(range(col, n), key=lambda r: abs(m[r][col]))
            if m[piv][col] == 0:
                piv = None
        if piv is None:
            return Fraction(0) if exact else 0.0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        p = m[col][col]
        det = det * p
        for r in range(col + 1, n):
            f = m[r][col] / p
            if f == 0:
                continue
            row_r, row_c = m[r], m[col]
            for k in range(col, n):
                row_r[k] -= f * row_c[k]
    return det


def sylvester_matrix(p: Sequence, q: Sequence) -> list[list]:
    """Sylvester matrix from coefficient lists in ascending order.

    The lists are taken at their formal length, so a vanishing leading entry
    is kept in place rather than trimmed.
    """
    m, n = len(p) - 1, len(q) - 1
    size = m + n
    zero = Fraction(0)
    rows = []
    for i in range(n):
        row = [zero] * size
        for k, a in enumerate(reversed(p)):
            row[i + k] = a
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for k, a in enumerate(reversed(q)):
            row[i + k] = a
        rows.append(row)
    return rows


def univariate_resultant(p: Polynomial, q: Polynomial):
    """Resultant of two univariate polynomials as a Sylvester determinant."""
    p, q = Polynomial(p), Polynomial(q)
    if p.degree < 0 or q.degree < 0:
        return Fraction(0)
    if p.degree == 0 and q.degree == 0:
        return Fraction(1)
    return determinant(sylvester_matrix(p.coeffs, q.coeffs))


def discriminant(phi: Polynomial):
    """``(-1)^(n(n-1)/2) Res(phi, phi') / lc(phi)``; zero iff phi has a repeated root."""
    phi = Polynomial(phi)
    n = phi.degree
    if n < 2:
        raise ValueError(f"discriminant needs degree >= 2, got {n}")
    res = univariate_resultant(phi, phi.derivative())
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * res / phi.lc


def interpolate(xs: Sequence, ys: Sequence) -> Polynomial:
    """Newton divided-difference interpolation through ``(xs[i], ys[i])``."""
    xs = [_coerce(x) for x in xs]
    coef = [_coerce(y) for y in ys]
    n = len(xs)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    p = Polynomial((coef[-1],))
    for i in range(n - 2, -1, -1):
        p = p * Polynomial((-xs[i], 1)) + coef[i]
    return p


class BiPolynomial:
    """Sparse polynomial in ``x`` and ``y``: a map ``(i, j) -> coeff of x^i y^j``."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        d = {}
        if isinstance(terms, BiPolynomial):
            d = dict(terms.terms)
        elif terms:
            for (i, j), a in dict(terms).items():
                a = _coerce(a)
                if a != 0:
                    d[(int(i), int(j))] = a
        object.__setattr__(self, "terms", d)

    @classmethod
    def _raw(cls, d: dict) -> "BiPolynomial":
        p = cls.__new__(cls)
        object.__setattr__(p, "terms", {k: v for k, v in d.items() if v != 0})
        return p

    def __setattr__(self, name, value):
        raise AttributeError("BiPolynomial is immutable")

    @classmethod
    def x(cls) -> "BiPolynomial":
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> "BiPolynomial":
        return cls({(0, 1): 1})

    @classmethod
    def constant(cls, a) -> "BiPolynomial":
        return cls({(0, 0): a})

    @classmethod
    def from_polynomial(cls, p: Polynomial, var: str = "x") -> "BiPolynomial":
        if var == "x":
            return cls({(k, 0): a for k, a in enumerate(p.coeffs)})
        if var == "y":
            return cls({(0, k): a for k, a in enumerate(p.coeffs)})
        raise ValueError(f"unknown variable {var!r}")

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, BiPolynomial):
            return self.terms == other.terms
        if isinstance(other, numbers.Number):
            return self.terms == BiPolynomial.constant(other).terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def degree(self, var: str) -> int:
        idx = {"x": 0, "y": 1}[var]
        return max((k[idx] for k in self.terms), default=-1)

    @property
    def total_degree(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    @staticmethod
    def _lift(other):
        if isinstance(other, BiPolynomial):
            return other
        if isinstance(other, numbers.Number):
            return BiPolynomial.constant(other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        d = dict(self.terms)
        for k, a in o.terms.items():
            d[k] = d.get(k, 0) + a
        return BiPolynomial._raw(d)

    __radd__ = __add__

    def __neg__(self):
        return BiPolynomial._raw({k: -a for k, a in self.terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, numbers.Number):
            other = _coerce(other)
            return BiPolynomial._raw({k: a * other for k, a in self.terms.items()})
        if not isinstance(other, BiPolynomial):
            return NotImplemented
        d: dict = {}
        for (i1, j1), a in self.terms.items():
            for (i2, j2), b in other.terms.items():
                k = (i1 + i2, j1 + j2)
                d[k] = d.get(k, 0) + a * b
        return BiPolynomial._raw(d)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = BiPolynomial.constant(1)
        for _ in range(k):
            result = result * self
        return result

    def diff(self, var: str) -> "BiPolynomial":
        d = {}
        for (i, j), a in self.terms.items():
            if var == "x" and i:
                d[(i - 1, j)] = a * i
            elif var == "y" and j:
                d[(i, j - 1)] = a * j
        return BiPolynomial._raw(d)

    def __call__(self, x, y):
        # Horner in y inside Horner in x
        by_x: dict = {}
        for (i, j), a in self.terms.items():
            by_x.setdefault(i, {})[j] = a
        total = 0
        for i in range(max(by_x, default=-1), -1, -1):
            row = by_x.get(i)
            inner = 0
            if row:
                for j in range(max(row), -1, -1):
                    inner = inner * y + row.get(j, 0)
            total = total * x + inner
        return total

    def coeffs_in(self, var: str) -> dict[int, Polynomial]:
        """Write the polynomial in ``var`` with univariate coefficients in the other variable."""
        out: dict[int, list] = {}
        for (i, j), a in self.terms.items():
            key, other = (i, j) if var == "x" else (j, i)
            c = out.setdefault(key, [])
            if len(c) <= other:
                c.extend([Fraction(0)] * (other + 1 - len(c)))
            c[other] = a
        return {k: Polynomial(v) for k, v in out.items()}

    def substitute(self, x=None, y=None) -> "BiPolynomial":
        """Replace ``x`` and/or ``y`` by numbers or other BiPolynomials."""
        xs = BiPolynomial.x() if x is None else self._lift(x)
        ys = BiPolynomial.y() if y is None else self._lift(y)
        result = BiPolynomial()
        xpow: dict = {0: BiPolynomial.constant(1)}
        ypow: dict = {0: BiPolynomial.constant(1)}
        for (i, j), a in sorted(self.terms.items()):
            for store, base, k in ((xpow, xs, i), (ypow, ys, j)):
                while k not in store:
                    top = max(store)
                    store[top + 1] = store[top] * base
            result = result + xpow[i] * ypow[j] * a
        return result

    def to_polynomial(self, var: str) -> Polynomial:
        """Univariate view; fails if the other variable occurs."""
        other = "y" if var == "x" else "x"
        if self.degree(other) > 0:
            raise ValueError(f"polynomial depends on {other}")
        idx = 0 if var == "x" else 1
        c = [Fraction(0)] * (self.degree(var) + 1)
        for k, a in self.terms.items():
            c[k[idx]] = a
        return Polynomial(c)

    def __repr__(self):
        return f"BiPolynomial({self.to_string()})"

    def to_string(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (i, j), a in sorted(self.terms.items(), key=lambda t: (-(t[0][0] + t[0][1]), -t[0][0])):
            mono = "*".join(
                m for m in (
                    "" if i == 0 else ("x" if i == 1 else f"x^{i}"),
                    "" if j == 0 else ("y" if j == 1 else f"y^{j}"),
                ) if m
            )
            parts.append(f"{a}*{mono}" if mono else str(a))
        return " + ".join(parts).replace("+ -", "- ")

    __str__ = to_string


def resultant(p: BiPolynomial, q: BiPolynomial, eliminate: str = "x") -> Polynomial:
    """Eliminate one variable from two bivariate polynomials.

    Returns the Sylvester determinant ``Res_var(p, q)`` as a univariate
    polynomial in the remaining variable.  The determinant is sampled at
    integer points and interpolated, all in exact arithmetic.
    """
    if eliminate not in ("x", "y"):
        raise ValueError(f"unknown variable {eliminate!r}")
    pc, qc = p.coeffs_in(eliminate), q.coeffs_in(eliminate)
    dp, dq = max(pc, default=-1), max(qc, default=-1)
    for name, d in (("p", dp), ("q", dq)):
        if d < 1:
            raise DegenerateResultantError(
                f"{name} has degree {d} in {eliminate}; nothing to eliminate"
            )
    zero = Polynomial()
    plist = [pc.get(k, zero) for k in range(dp + 1)]
    qlist = [qc.get(k, zero) for k in range(dq + 1)]
    bound = dq * max(c.degree for c in plist) + dp * max(c.degree for c in qlist)
    pts = [Fraction(t) for t in range(bound + 1)]
    vals = [
        determinant(sylvester_matrix([c(t) for c in plist], [c(t) for c in qlist]))
        for t in pts
    ]
    return interpolate(pts, vals)


class RationalFunction:
    """Quotient ``num/den`` of univariate polynomials, kept gcd-reduced.

    For exact coefficients the denominator is made monic; the common factor
    is cancelled by a polynomial gcd.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = num if isinstance(num, Polynomial) else Polynomial((num,))
        den = den if isinstance(den, Polynomial) else Polynomial((den,))
        if not den:
            raise ZeroDivisionError("denominator is the zero polynomial")
        if num.is_exact and den.is_exact:
            if not num:
                den = Polynomial((1,))
            else:
                g = gcd(num, den)
                if g.degree > 0:
                    num, den = num // g, den // g
            lead = den.lc
            num, den = num / lead, den / lead
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @staticmethod
    def _lift(other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (Polynomial, numbers.Number)):
            return RationalFunction(other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError("evaluation at a pole")
        return self.num(x) / d

    def __repr__(self):
        return f"RationalFunction(({self.num}) / ({self.den}))"
