"""Closed-form and semi-analytic oracles for the built-in families.

For intervals (0, t) on the circle-immersed line the Dirichlet spectrum is
k^2 pi^2 / t^2 - 1.  A domain carries a volume-preserving Jacobi field
exactly when

    psi(t) = 2 - 2 cos t - t sin t = 0,

and more generally the constrained eigenproblem -u'' - u = lambda u + c,
u(0) = u(t) = 0, int u = 0 is solvable nontrivially iff psi(omega t) = 0
with omega = sqrt(1 + lambda); hence the k-th constrained eigenvalue is
(l_k / t)^2 - 1 with l_k the k-th positive zero of psi.  The solvability
determinant is evaluated on three branches (trigonometric, series around
lambda = -1, hyperbolic) to stay well-conditioned, and doubles as an
independent cross-check of both the closed form and the discrete solver.

Bessel-function zeros (for the cylinder disk spectrum) are computed from
scratch: ascending series below x = 12, Miller's backward recurrence
above, scanning brackets guided by McMahon's asymptotic spacing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InputError, NumericError

_EPS = np.finfo(float).eps


def circle_dirichlet_lambda(k: int, t: float) -> float:
    """k-th Dirichlet eigenvalue of -u'' - u on (0, t)."""
    if k < 1 or t <= 0.0:
        raise InputError("need k >= 1 and t > 0")
    return (k * math.pi / t) ** 2 - 1.0


def psi(t):
    """Jacobi-field indicator 2 - 2 cos t - t sin t (vectorized)."""
    return 2.0 - 2.0 * np.cos(t) - t * np.sin(t)


@dataclass(frozen=True)
class PsiZeros:
    """Ascending zeros l_1 < l_2 < ... of psi with their search brackets."""

    zeros: np.ndarray
    brackets: tuple


def _bisect(f, lo, hi):
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0.0:
        raise NumericError(f"no sign change on bracket ({lo}, {hi})")
    while hi - lo > 4.0 * _EPS * max(1.0, abs(hi)):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = f(mid)
        if fm == 0.0:
            return mid
        if flo * fm < 0.0:
            hi = mid
        else:
            lo, flo = mid, fm
    return 0.5 * (lo + hi)


def psi_zero(k: int) -> float:
    """k-th positive zero of psi; always in (k pi, (k+1) pi].

    Odd k: the zero is exactly (k+1) pi, pinned analytically after
    confirming the sign change on a shrunk bracket (psi crosses downward
    through even multiples of pi).  Even k: bisection on the bracket
    ((k + 1/2) pi, (k+1) pi), on which psi goes from negative to positive.
    """
    if k < 1:
        raise InputError("need k >= 1")
    if k % 2 == 1:
        root = (k + 1) * math.pi
        delta = 1e-6 * root
        if not (psi(root - delta) > 0.0 > psi(root + delta)):
            raise NumericError(f"sign change missing around {root}")
        return root
    return _bisect(psi, (k + 0.5) * math.pi, (k + 1) * math.pi)


def psi_zero_bracket(k: int) -> tuple:
    if k % 2 == 1:
        root = (k + 1) * math.pi
        return (root - 1e-6 * root, root + 1e-6 * root)
    return ((k + 0.5) * math.pi, (k + 1) * math.pi)


def psi_zeros(count: int) -> PsiZeros:
    if count < 1:
        raise InputError("need count >= 1")
    zeros = np.array([psi_zero(k) for k in range(1, count + 1)])
    brackets = tuple(psi_zero_bracket(k) for k in range(1, count + 1))
    return PsiZeros(zeros=zeros, brackets=brackets)


def circle_twisted_lambda(k: int, t: float) -> float:
    """k-th volume-constrained eigenvalue of -u'' - u on (0, t)."""
    if k < 1 or t <= 0.0:
        raise InputError("need k >= 1 and t > 0")
    return (psi_zero(k) / t) ** 2 - 1.0


# The solvability determinant of {u(0) = 0, u(t) = 0, int u = 0} for
# -u'' - u = lambda u + c reduces to psi(omega t) / (1 + lambda)^2 with
# omega = sqrt(1 + lambda).  Near lambda = -1 that is 0/0; the series in
# x = (1 + lambda) t^2,
#     det = t^4 * sum_{m>=0} (2m+2)/(2m+4)! (-x)^m,
# follows from psi(s) = sum_{n>=2} (-1)^n (2n-2) s^(2n) / (2n)!.
_SERIES_COEFF = [
    (2 * m + 2) / math.factorial(2 * m + 4) for m in range(6)
]


def twisted_det(lam: float, t: float) -> float:
    """Solvability determinant; sign changes in lambda locate constrained
    eigenvalues.  twisted_det(0, t) equals psi(t) exactly."""
    if t <= 0.0:
        raise InputError("need t > 0")
    nu = 1.0 + lam
    x = nu * t * t
    if abs(x) <= 0.5:
        acc = 0.0
        for m in range(len(_SERIES_COEFF) - 1, -1, -1):
            acc = _SERIES_COEFF[m] + acc * (-x)
        return t ** 4 * acc
    if nu > 0.0:
        w = math.sqrt(nu)
        s = w * t
        return (2.0 - 2.0 * math.cos(s) - s * math.sin(s)) / (nu * nu)
    sg = math.sqrt(-nu)
    s = sg * t
    return (2.0 - 2.0 * math.cosh(s) + s * math.sinh(s)) / (nu * nu)


def bessel_j(m: int, x: float) -> float:
    """J_m(x) by ascending series (x <= 12) or Miller's backward
    recurrence with even-order normalization (x > 12)."""
    if m < 0:
        raise InputError("need m >= 0")
    if x == 0.0:
        return 1.0 if m == 0 else 0.0
    if x < 0.0:
        raise InputError("need x >= 0")
    if x <= 12.0:
        half = 0.5 * x
        term = half ** m / math.factorial(m)
        acc = term
        for i in range(1, 200):
            term *= -(half * half) / (i * (m + i))
            acc += term
            if abs(term) <= 1e-18 * abs(acc) + 1e-300:
                break
        return acc
    # Miller: run the three-term recurrence downward from well above both
    # m and x, then normalize with J_0 + 2 J_2 + 2 J_4 + ... = 1.
    top = int(m + 1.5 * x + 30)
    if top % 2 == 1:
        top += 1
    jp, jc = 0.0, 1e-30
    norm = 0.0
    jm = 0.0
    for k in range(top, 0, -1):
        jn = (2.0 * k / x) * jc - jp
        jp, jc = jc, jn
        if k - 1 == m:
            jm = jc
        if (k - 1) % 2 == 0:
            norm += jc if k - 1 == 0 else 2.0 * jc
        if abs(jc) > 1e250:
            jp *= 1e-250
            jc *= 1e-250
            norm *= 1e-250
            jm *= 1e-250
    return jm / norm


def bessel_zero(m: int, n: int) -> float:
    """n-th positive zero of J_m, by scanning brackets and bisection.

    McMahon's asymptotics put consecutive zeros about pi apart beyond
    j_{m,1} > m, so a scan step well under pi cannot skip one.
    """
    if m < 0 or n < 1:
        raise InputError("need m >= 0 and n >= 1")
    f = lambda x: bessel_j(m, x)
    x = m + 1e-3 if m > 0 else 0.5
    fx = f(x)
    step = 0.2
    found = 0
    for _ in range(100000):
        y = x + step
        fy = f(y)
        if fx == 0.0:
            found += 1
            if found == n:
                return x
        elif fx * fy < 0.0:
            found += 1
            if found == n:
                return _bisect(f, x, y)
        x, fx = y, fy
    raise NumericError(f"failed to locate zero {n} of J_{m}")  # pragma: no cover


def gap_lambda1(t: float) -> float:
    """First Dirichlet eigenvalue of the shrinking-gap family: 1/t^2 for
    t < 1, dropping to 1/4 when the gap closes at t = 1."""
    if not (0.0 < t <= 1.0):
        raise InputError(f"need 0 < t <= 1, got {t}")
    if t < 1.0:
        return 1.0 / (t * t)
    return 0.25
