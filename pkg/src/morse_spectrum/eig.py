"""Dirichlet and volume-constrained eigensolvers.

``solve_dirichlet`` handles the symmetric generalized problem
A x = lambda M x via diagonal scaling to a standard symmetric
(block-)tridiagonal problem, solved per block by LAPACK.

``solve_twisted`` computes the spectrum of the same form restricted to the
mean-zero hyperplane {f : w'f = 0}.  In the scaled eigenbasis the
constrained eigenvalues are (i) the roots mu of the secular function

    S(mu) = sum_j c_j^2 / (lambda_j - mu),    c_j = <v_j, w_scaled>,

one in each open gap between consecutive Dirichlet eigenvalues carrying a
nonzero constraint component, found by bisection, plus (ii) Dirichlet
eigenvalues whose constraint component vanishes, which persist unchanged.
The bracketing makes the interlacing lambda_j <= mu_j <= lambda_{j+1}
exact by construction.  S is evaluated through the resolvent,
S(mu) = w'(B - mu I)^{-1} w, with a banded solve, so the tail of the
spectrum is included exactly without computing high eigenvectors.

A dense projected solver (explicit orthonormal basis of the constraint
complement) is provided as an independent cross-check for small problems.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla

from .discretize import AssembledOperator
from .errors import InputError, NumericError

#: Dirichlet eigenvalues closer than this (relative) form one cluster
CLUSTER_RTOL = 1e-12
#: constraint components below this (relative to ||w||) are treated as zero
DEFLATE_RTOL = 1e-10
#: bisection interval-width target, relative to the local eigenvalue scale
BISECT_RTOL = 1e-12
BISECT_MAX_ITER = 200


@dataclass
class EigenResult:
    """Ascending eigenvalues with M-orthonormal eigenvectors (columns)."""

    values: np.ndarray
    vectors: np.ndarray | None
    constrained: bool
    meta: dict = field(default_factory=dict)


@dataclass(frozen=True)
class IndexNullity:
    index: int
    nullity: int
    tol: float


def default_null_tol(h: float, lam_scale: float = 1.0, kappa: float = 5.0) -> float:
    """Zero-classification tolerance reflecting the O(h^2) scheme error."""
    return max(1e-6, kappa * h * h * (1.0 + abs(lam_scale)))


def _check_k(k: int, dim: int):
    if not (1 <= k <= dim):
        raise InputError(f"k = {k} out of range for problem of dimension {dim}")


def _block_tridiag_eigh(diag, offdiag, blocks, k, want_vectors):
    """k smallest eigenpairs of a block-tridiagonal symmetric matrix."""
    vals_all, vecs_all = [], []
    n = diag.shape[0]
    for start, stop in blocks:
        bn = stop - start
        kk = min(k, bn)
        d = diag[start:stop]
        e = offdiag[start : stop - 1]
        try:
            if want_vectors:
                vals, vecs = sla.eigh_tridiagonal(
                    d, e, select="i", select_range=(0, kk - 1)
                )
            else:
                vals = sla.eigh_tridiagonal(
                    d, e, select="i", select_range=(0, kk - 1), eigvals_only=True
                )
                vecs = None
        except sla.LinAlgError as exc:  # pragma: no cover - LAPACK failure
            raise NumericError(f"tridiagonal eigensolve failed: {exc}") from exc
        for i in range(kk):
            v = None
            if want_vectors:
                v = np.zeros(n)
                v[start:stop] = vecs[:, i]
            vals_all.append(vals[i])
            vecs_all.append(v)
    order = np.argsort(np.array(vals_all), kind="stable")[:k]
    values = np.array([vals_all[i] for i in order])
    vectors = np.column_stack([vecs_all[i] for i in order]) if want_vectors else None
    return values, vectors


def solve_dirichlet(op: AssembledOperator, k: int, want_vectors: bool = True) -> EigenResult:
    """k smallest eigenpairs of A x = lambda M x, merged across blocks."""
    _check_k(k, op.size)
    d, e, _ = op.scaled()
    values, y = _block_tridiag_eigh(d, e, op.blocks, k, want_vectors)
    vectors = None
    if want_vectors:
        vectors = y / np.sqrt(op.mass)[:, None]  # x = M^{-1/2} y, M-orthonormal
    return EigenResult(values=values, vectors=vectors, constrained=False, meta=dict(op.meta))


def _resolvent_secular(d, e, w_scaled):
    """Callable mu -> w'(B - mu)^{-1} w for banded B."""
    n = d.shape[0]
    ab = np.zeros((3, n))
    ab[0, 1:] = e
    ab[2, :-1] = e

    def S(mu):
        ab[1] = d - mu
        x = sla.solve_banded((1, 1), ab, w_scaled, overwrite_ab=False, overwrite_b=False)
        return float(w_scaled @ x)

    return S


def _bisect_gap(S, lo, hi):
    """Root of the increasing secular function on the open gap (lo, hi)."""
    tol = BISECT_RTOL * (1.0 + abs(lo) + abs(hi))
    for _ in range(BISECT_MAX_ITER):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if S(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    else:
        raise NumericError(
            f"secular bisection did not converge; bracket width {hi - lo:.3e}"
        )
    return 0.5 * (lo + hi)


def _cluster(values, c):
    """Group near-identical eigenvalues; pool their constraint weight.

    Within a cluster the basis can be rotated so a single vector carries
    the whole constraint component; the others persist unchanged.  Only
    the pooled weight matters for the secular function.
    """
    groups = []
    i = 0
    K = len(values)
    while i < K:
        j = i
        while j + 1 < K and values[j + 1] - values[j] <= CLUSTER_RTOL * (1.0 + abs(values[j])):
            j += 1
        wsq = float(np.sum(c[i : j + 1] ** 2))
        groups.append((i, j, values[i], wsq))
        i = j + 1
    return groups


def _twisted_from_pairs(op, k, dir_vals, dir_y, want_vectors):
    """Constrained spectrum given Dirichlet pairs in scaled coordinates.

    Returns None when the supplied pairs cannot certify completeness of
    the enumeration up to the (k+1)-th Dirichlet eigenvalue (the caller
    then retries with more pairs).
    """
    d, e, w_scaled = op.scaled()
    wnorm = float(np.linalg.norm(w_scaled))
    ctol = DEFLATE_RTOL * max(1.0, wnorm)
    K = dir_vals.shape[0]

    c = dir_y.T @ w_scaled
    groups = _cluster(dir_vals, c)
    last_active = max(
        (val for _, _, val, wsq in groups if math.sqrt(wsq) > ctol), default=-np.inf
    )
    # the enumeration below is complete up to the last secular pole it
    # knows about; that pole must clear lambda_{k+1} unless the whole
    # spectrum is already in hand
    if K < op.size and last_active < dir_vals[min(k, K - 1)]:
        return None

    candidates = []  # (value, vector-in-scaled-coords or None)
    active = []  # pole positions of the secular function
    for i, j, val, wsq in groups:
        mult = j - i + 1
        if math.sqrt(wsq) <= ctol:
            for p in range(i, j + 1):
                candidates.append((val, dir_y[:, p]))
        else:
            active.append(val)
            if mult > 1:
                # rotate the cluster basis so its first vector carries the
                # whole constraint component; the rest persist unchanged
                basis = np.eye(mult)
                basis[:, 0] = c[i : j + 1]
                q, _ = np.linalg.qr(basis)
                rot = dir_y[:, i : j + 1] @ q
                for p in range(1, mult):
                    candidates.append((val, rot[:, p]))

    S = _resolvent_secular(d, e, w_scaled)
    for a, b in zip(active[:-1], active[1:]):
        candidates.append((_bisect_gap(S, a, b), None))

    candidates.sort(key=lambda vc: vc[0])
    candidates = candidates[:k]
    values = np.array([v for v, _ in candidates])

    vectors = None
    if want_vectors:
        n = op.size
        ab = np.zeros((3, n))
        ab[0, 1:] = e
        ab[2, :-1] = e
        cols = []
        for mu, y in candidates:
            if y is None:
                # constrained eigenvector: y ~ (B - mu)^{-1} w, automatically
                # orthogonal to w since S(mu) = 0
                ab[1] = d - mu
                y = sla.solve_banded((1, 1), ab, w_scaled)
            y = y - (w_scaled @ y) / (wnorm * wnorm) * w_scaled
            # modified Gram-Schmidt: the resolvent solves leave O(eps*cond)
            # cross-talk between root vectors; sweep it out
            for prev in cols:
                y = y - (prev @ y) * prev
            y = y / np.linalg.norm(y)
            cols.append(y)
        vectors = np.column_stack(cols) / np.sqrt(op.mass)[:, None]
    return EigenResult(values=values, vectors=vectors, constrained=True, meta=dict(op.meta))


def solve_twisted(op: AssembledOperator, k: int, want_vectors: bool = True) -> EigenResult:
    """k smallest eigenvalues of the form restricted to {w'f = 0}.

    Interlacing confines them to [lambda_1, lambda_{k+1}], so a modest
    number of Dirichlet pairs suffices.  Falls back to the Dirichlet
    spectrum when the constraint is vacuous (w identically zero, e.g.
    azimuthal modes m >= 1).
    """
    _check_k(k, op.size)
    if not np.any(op.mean):
        res = solve_dirichlet(op, k, want_vectors)
        return EigenResult(res.values, res.vectors, constrained=True, meta=res.meta)
    if op.size < 2:
        raise InputError("constrained problem needs dimension >= 2")
    _check_k(k, op.size - 1)  # the constraint removes one dimension
    d, e, _ = op.scaled()
    K = min(op.size, k + 6)
    while True:
        dir_vals, dir_y = _block_tridiag_eigh(d, e, op.blocks, K, True)
        result = _twisted_from_pairs(op, k, dir_vals, dir_y, want_vectors)
        if result is not None:
            return result
        K = min(op.size, 2 * K)


def solve_spectra(op: AssembledOperator, k_dirichlet: int, k_twisted: int):
    """Both spectra from one eigendecomposition.

    Sharing the Dirichlet pairs makes the interlacing of the two returned
    spectra exact to the bit: constrained persistors reuse the identical
    Dirichlet values and secular roots are bracketed between them.
    """
    _check_k(k_dirichlet, op.size)
    if not np.any(op.mean):
        res = solve_dirichlet(op, max(k_dirichlet, k_twisted), want_vectors=False)
        return (
            EigenResult(res.values[:k_dirichlet], None, False, dict(op.meta)),
            EigenResult(res.values[:k_twisted], None, True, dict(op.meta)),
        )
    _check_k(k_twisted, max(op.size - 1, 1))
    d, e, _ = op.scaled()
    K = min(op.size, max(k_dirichlet, k_twisted + 6))
    while True:
        dir_vals, dir_y = _block_tridiag_eigh(d, e, op.blocks, K, True)
        twisted = _twisted_from_pairs(op, k_twisted, dir_vals, dir_y, want_vectors=False)
        if twisted is not None:
            dirichlet = EigenResult(
                dir_vals[:k_dirichlet].copy(), None, False, dict(op.meta)
            )
            return dirichlet, twisted
        K = min(op.size, 2 * K)


def solve_twisted_dense(op: AssembledOperator, k: int) -> EigenResult:
    """Independent oracle: project onto an explicit orthonormal basis of
    the constraint complement and diagonalize densely.  O(n^3); for tests
    and small problems."""
    _check_k(k, op.size)
    if not np.any(op.mean):
        a = op.stiffness()
        s = np.sqrt(op.mass)
        b = a / s[:, None] / s[None, :]
        vals = np.linalg.eigvalsh(b)
        return EigenResult(vals[:k], None, constrained=True, meta=dict(op.meta))
    d, e, w_scaled = op.scaled()
    s = np.sqrt(op.mass)
    b = op.stiffness() / s[:, None] / s[None, :]
    q = sla.null_space(w_scaled[None, :])
    vals = np.linalg.eigvalsh(q.T @ b @ q)
    return EigenResult(vals[:k], None, constrained=True, meta=dict(op.meta))


def index_nullity(res, tol: float) -> IndexNullity:
    """Count eigenvalues below -tol (index) and within tol of zero (nullity)."""
    if tol <= 0.0:
        raise InputError("tolerance must be positive")
    values = res.values if isinstance(res, EigenResult) else np.asarray(res, dtype=float)
    index = int(np.sum(values < -tol))
    nullity = int(np.sum(np.abs(values) <= tol))
    return IndexNullity(index=index, nullity=nullity, tol=tol)


def rayleigh(op: AssembledOperator, f: np.ndarray) -> float:
    """The discrete I(f, f) / ||f||^2 (second variation along f when w'f = 0)."""
    f = np.asarray(f, dtype=float)
    if f.shape != (op.size,):
        raise InputError(f"vector length {f.shape} does not match dimension {op.size}")
    denom = float(f @ (op.mass * f))
    if denom == 0.0:
        raise InputError("rayleigh quotient of the zero vector")
    return op.quad_form(f) / denom
