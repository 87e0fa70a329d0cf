"""Pre-images of a target point and their signed magnifications."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .catalog import (
    DegenerateRootError,
    FamilySpec,
    _params,
    _source,
    back_substitute,
    eliminate,
    lens_map,
)
from .polynomial import BiPolynomial, gcd
from .roots import complex_roots

__all__ = [
    "PreImage",
    "SolveReport",
    "solve_images",
    "signed_sums",
    "is_caustic",
    "REAL_TOL",
    "CAUSTIC_TOL",
]

REAL_TOL = 1e-9
CAUSTIC_TOL = 1e-9


@dataclass(frozen=True)
class PreImage:
    x: complex
    y: complex
    magnification: complex
    is_real: bool


@dataclass(frozen=True)
class SolveReport:
    family: str
    params: tuple
    s: tuple
    images: tuple[PreImage, ...]
    n_real: int
    sum_real: float
    sum_all: complex
    min_abs_detjac: float
    caustic_flag: bool
    witness: float
    degenerate: tuple[complex, ...] = field(default=())

    @property
    def max_abs_magnification(self) -> float:
        return max((abs(im.magnification) for im in self.images), default=0.0)

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "params": [_jsonable(c) for c in self.params],
            "s": [_jsonable(v) for v in self.s],
            "exact": all(isinstance(v, Fraction) for v in (*self.params, *self.s)),
            "images": [
                {"x": _pair(im.x), "y": _pair(im.y), "mag": _pair(im.magnification),
                 "real": im.is_real}
                for im in self.images
            ],
            "n_real": self.n_real,
            "sum_real": self.sum_real,
            "sum_all": _pair(self.sum_all),
            "caustic_flag": self.caustic_flag,
            "min_abs_detjac": self.min_abs_detjac,
            "witness": self.witness,
            "degenerate": [_pair(z) for z in self.degenerate],
        }


def _pair(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def _jsonable(v):
    return str(v) if isinstance(v, Fraction) else float(v)


def _to_float_bipoly(p: BiPolynomial) -> tuple:
    return tuple((i, j, float(a)) for (i, j), a in p.terms.items())


def _eval(terms: tuple, x: complex, y: complex) -> complex:
    return sum(a * x ** i * y ** j for i, j, a in terms)


@lru_cache(maxsize=256)
def _jacobian_terms(spec: FamilySpec, c: tuple) -> tuple:
    f1, f2 = lens_map(spec, c)
    return tuple(_to_float_bipoly(p) for p in (f1.diff("x"), f1.diff("y"), f2.diff("x"), f2.diff("y")))


def _jacobian(spec: FamilySpec, c: tuple, x: complex, y: complex):
    a, b, cc, d = (_eval(t, x, y) for t in _jacobian_terms(spec, c))
    return a, b, cc, d


def _is_real_root(z: complex) -> bool:
    return abs(z.imag) <= REAL_TOL * (1 + abs(z))


def solve_images(spec: FamilySpec, params, s, tol: float = CAUSTIC_TOL) -> SolveReport:
    """All ``deg(phi)`` complex pre-images of ``s`` with magnifications ``1/det Jac f``.

    Roots whose back-substitution denominator vanishes are listed in
    ``degenerate`` and left out of the sums.  A target within ``tol`` of the
    caustic gets ``caustic_flag`` set; it is never an error.
    """
    c = tuple(_params(spec, params).values())
    s1, s2 = _source(s)
    phi, _ = eliminate(spec, c, (s1, s2))
    repeated = phi.is_exact and gcd(phi, phi.derivative()).degree > 0
    roots = complex_roots(phi)

    images, degenerate = [], []
    min_det, witness = math.inf, 1.0
    for root in roots:
        try:
            x, y = back_substitute(spec, c, (s1, s2), root)
        except DegenerateRootError:
            degenerate.append(root)
            continue
        x, y = complex(x), complex(y)
        j11, j12, j21, j22 = _jacobian(spec, c, x, y)
        det = j11 * j22 - j12 * j21
        frob = abs(j11) ** 2 + abs(j12) ** 2 + abs(j21) ** 2 + abs(j22) ** 2
        min_det = min(min_det, abs(det))
        witness = min(witness, 2 * abs(det) / frob if frob else 0.0)
        if det == 0:
            degenerate.append(root)
            continue
        real = _is_real_root(root)
        mag = 1 / det
        if real:
            x, y, mag = complex(x.real), complex(y.real), complex(mag.real)
        images.append(PreImage(x, y, mag, real))

    if repeated or degenerate:
        witness = 0.0
    real_mags = [im.magnification.real for im in images if im.is_real]
    sum_all = complex(
        math.fsum(im.magnification.real for im in images),
        math.fsum(im.magnification.imag for im in images),
    )
    return SolveReport(
        family=spec.name,
        params=c,
        s=(s1, s2),
        images=tuple(images),
        n_real=len(real_mags),
        sum_real=math.fsum(real_mags),
        sum_all=sum_all,
        min_abs_detjac=min_det if images else 0.0,
        caustic_flag=witness <= tol,
        witness=witness,
        degenerate=tuple(degenerate),
    )


def signed_sums(report: SolveReport) -> tuple[float, complex]:
    return report.sum_real, report.sum_all


def is_caustic(spec: FamilySpec, params, s, tol: float = CAUSTIC_TOL) -> tuple[bool, float]:
    """Flag targets on (or within ``tol`` of) the caustic.

    The witness is ``min_i 2|det J|/||J||_F^2`` over the pre-images, a
    scale-free inverse condition number of the Jacobian; it is 0 when the
    exact elimination polynomial has a repeated root.
    """
    c = tuple(_params(spec, params).values())
    s1, s2 = _source(s)
    phi, _ = eliminate(spec, c, (s1, s2))
    if phi.is_exact and gcd(phi, phi.derivative()).degree > 0:
        return True, 0.0
    report = solve_images(spec, c, (s1, s2), tol)
    return report.caustic_flag, report.witness
