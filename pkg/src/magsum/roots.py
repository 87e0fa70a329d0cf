"""Numeric roots of univariate polynomials.

Two routes are available: eigenvalues of the companion matrix (default) and
Aberth-Ehrlich simultaneous iteration.  Both finish with a short Newton
polish and return the roots in canonical order (real part, then imaginary).
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .polynomial import Polynomial

__all__ = ["RootFindingError", "complex_roots", "companion_roots", "aberth_roots", "sort_roots"]

ABERTH_MAX_ITER = 200


class RootFindingError(ArithmeticError):
    def __init__(self, message, residuals=()):
        super().__init__(message)
        self.residuals = list(residuals)


def _coefficients(phi: Polynomial) -> np.ndarray:
    c = np.array([complex(a) for a in phi.coeffs], dtype=complex)
    if np.all(c.imag == 0):
        return c.real.astype(float)
    return c


def sort_roots(roots) -> list[complex]:
    return sorted((complex(r) for r in roots), key=lambda z: (z.real, z.imag))


def companion_roots(coeffs: np.ndarray) -> np.ndarray:
    """Eigenvalues of the companion matrix; ``coeffs`` ascending, lc nonzero."""
    n = len(coeffs) - 1
    if n == 1:
        return np.array([-coeffs[0] / coeffs[1]], dtype=complex)
    comp = np.zeros((n, n), dtype=coeffs.dtype)
    comp[1:, :-1] = np.eye(n - 1)
    comp[:, -1] = -coeffs[:-1] / coeffs[-1]
    return np.linalg.eigvals(comp).astype(complex)


def aberth_roots(coeffs: np.ndarray, tol: float | None = None,
                 max_iter: int = ABERTH_MAX_ITER) -> np.ndarray:
    """Aberth-Ehrlich iteration started on a circle of Cauchy-bound radius."""
    n = len(coeffs) - 1
    c = np.asarray(coeffs, dtype=complex)
    if tol is None:
        tol = 1e-12 * (1 + float(np.max(np.abs(c))))
    dc = c[1:] * np.arange(1, n + 1)
    radius = 1 + float(np.max(np.abs(c[:-1] / c[-1])))
    z = radius * np.exp(1j * (2 * np.pi * np.arange(n) / n + 0.4))
    for _ in range(max_iter):
        p = np.polyval(c[::-1], z)
        dp = np.polyval(dc[::-1], z)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1)
        inv = 1 / diff
        np.fill_diagonal(inv, 0)
        ratio = np.divide(p, dp, out=np.zeros_like(p), where=dp != 0)
        step = ratio / (1 - ratio * inv.sum(axis=1))
        z = z - step
        if np.all(np.abs(p) <= tol):
            break
    else:
        residual = np.abs(np.polyval(c[::-1], z))
        if np.any(residual > tol * 1e3):
            raise RootFindingError(
                f"Aberth iteration did not converge in {max_iter} steps", residual
            )
    return z


def _newton_polish(coeffs: np.ndarray, z: complex, steps: int = 3) -> complex:
    c = coeffs[::-1]
    dc = np.polyder(c)
    best, best_res = z, abs(np.polyval(c, z))
    for _ in range(steps):
        d = np.polyval(dc, z)
        if d == 0:
            break
        z = z - np.polyval(c, z) / d
        res = abs(np.polyval(c, z))
        if not res < best_res:
            break
        best, best_res = z, res
    return complex(best)


def complex_roots(phi: Polynomial, tol: float = 1e-9, method: str = "companion") -> list[complex]:
    """All ``deg(phi)`` complex roots of ``phi``.

    ``tol`` bounds the relative backward error
    ``|phi(r)| / sum_k |a_k| |r|^k`` of every returned root.
    """
    phi = Polynomial(phi)
    if phi.degree < 1:
        raise ValueError("root finding needs degree >= 1")
    coeffs = _coefficients(phi)
    if method == "companion":
        z = companion_roots(coeffs)
    elif method == "aberth":
        z = aberth_roots(coeffs)
    else:
        raise ValueError(f"unknown method {method!r}")
    real = coeffs.dtype.kind == "f"
    polished = []
    for r in z:
        if real and r.imag == 0:
            polished.append(complex(_newton_polish(coeffs, r.real)))
        else:
            polished.append(_newton_polish(coeffs, complex(r)))
    if real:
        # Newton on a real polynomial commutes with conjugation; enforce it exactly
        polished = _conjugate_symmetric(polished)
    absc = np.abs(coeffs)
    residuals = []
    for r in polished:
        scale = float(np.polyval(absc[::-1], abs(r)))
        residuals.append(abs(np.polyval(coeffs[::-1], r)) / scale if scale else 0.0)
    if max(residuals) > tol or not all(map(cmath.isfinite, polished)):
        raise RootFindingError(
            f"root residual {max(residuals):.3g} exceeds tolerance {tol:.3g}", residuals
        )
    return sort_roots(polished)


def _conjugate_symmetric(roots: list[complex]) -> list[complex]:
    upper = [r for r in roots if r.imag > 0]
    lower = [r for r in roots if r.imag < 0]
    reals = [r for r in roots if r.imag == 0]
    if len(upper) != len(lower):
        return roots
    upper.sort(key=lambda z: (z.real, z.imag))
    lower.sort(key=lambda z: (z.real, -z.imag))
    out = list(reals)
    for u, l in zip(upper, lower):
        m = complex((u.real + l.real) / 2, (u.imag - l.imag) / 2)
        if not math.isclose(abs(u - l.conjugate()), 0, abs_tol=1e-6 * (1 + abs(u))):
            return roots
        out.extend((m, m.conjugate()))
    return out
