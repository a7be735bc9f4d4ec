import math

import numpy as np
import pytest

import morse_spectrum as ms
from morse_spectrum.discretize import tridiagonal_dirichlet_eigenvalue


def circle_op(t, n, b_sq=1.0):
    fam = ms.circle_interval_family(t_max=max(25.0, t))
    return ms.assemble_interval(ms.domain_at(fam, t), b_sq, n)


def gap_op(t, n):
    return ms.assemble_interval(ms.domain_at(ms.flat_gap_family(), t), 0.0, n)


def disk_op(t, m, n):
    slc = ms.domain_at(ms.cylinder_disk_family(), t)
    return ms.assemble_radial(slc, ms.UNIT_CYLINDER, m, n)


def test_extremal_interval_first_eigenvalue_near_zero():
    op = circle_op(math.pi, 2000)
    res = ms.solve_dirichlet(op, 1)
    assert abs(res.values[0]) <= 1e-5


def test_dirichlet_matches_tridiagonal_closed_form():
    t, n = 5.0, 300
    h = t / (n + 1)
    vals = ms.solve_dirichlet(circle_op(t, n), 8, want_vectors=False).values
    for j, v in enumerate(vals, start=1):
        ref = tridiagonal_dirichlet_eigenvalue(j, t, h, 1.0)
        assert v == pytest.approx(ref, rel=1e-10, abs=1e-12)


def test_gap_doubled_first_eigenvalue():
    vals = ms.solve_dirichlet(gap_op(0.5, 800), 2, want_vectors=False).values
    assert vals[0] == pytest.approx(4.0, rel=1e-3)
    assert vals[1] == pytest.approx(4.0, rel=1e-3)
    assert vals[0] == pytest.approx(vals[1], rel=1e-13)


def test_eigenvectors_mass_orthonormal():
    op = circle_op(4.0, 500)
    res = ms.solve_dirichlet(op, 6)
    gram = res.vectors.T @ (op.mass[:, None] * res.vectors)
    assert np.max(np.abs(gram - np.eye(6))) <= 1e-10


def test_twisted_matches_analytic():
    for t in (3.0, 7.0):
        op = circle_op(t, 2000)
        vals = ms.solve_twisted(op, 6, want_vectors=False).values
        for k, v in enumerate(vals, start=1):
            ref = ms.circle_twisted_lambda(k, t)
            assert abs(v - ref) <= 1e-3 * (1.0 + abs(ref))


def test_twisted_first_eigenvalue_analytic_tolerance():
    op = circle_op(5.0, 2000)
    v = ms.solve_twisted(op, 1, want_vectors=False).values[0]
    ref = (2 * math.pi / 5.0) ** 2 - 1.0
    assert v == pytest.approx(ref, rel=1e-3)


def test_twisted_vacuous_constraint_equals_dirichlet():
    op = disk_op(2.0, 1, 300)
    assert not np.any(op.mean)
    tw = ms.solve_twisted(op, 5, want_vectors=False)
    di = ms.solve_dirichlet(op, 5, want_vectors=False)
    np.testing.assert_array_equal(tw.values, di.values)
    assert tw.constrained


def test_twisted_vectors_orthonormal_and_constrained():
    for op in (circle_op(6.0, 1200), disk_op(3.0, 0, 900), gap_op(0.5, 400)):
        res = ms.solve_twisted(op, 5)
        gram = res.vectors.T @ (op.mass[:, None] * res.vectors)
        assert np.max(np.abs(gram - np.eye(5))) <= 1e-10
        assert np.max(np.abs(op.mean @ res.vectors)) <= 1e-10


@pytest.mark.parametrize("make,args", [
    (circle_op, (3.0, 160)),
    (circle_op, (8.0, 200)),
    (gap_op, (0.5, 90)),
    (gap_op, (0.97, 100)),
    (disk_op, (2.0, 0, 180)),
])
def test_secular_agrees_with_dense_projection(make, args):
    op = make(*args)
    k = 6
    fast = ms.solve_twisted(op, k, want_vectors=False).values
    dense = ms.solve_twisted_dense(op, k).values
    np.testing.assert_allclose(fast, dense, atol=1e-8, rtol=1e-8)


def test_interlacing_within_one_solve():
    for op in (circle_op(9.0, 700), gap_op(0.6, 300), disk_op(2.5, 0, 400)):
        dres, tres = ms.solve_spectra(op, 7, 6)
        d = dres.values
        tw = tres.values
        for j in range(6):
            assert d[j] <= tw[j] <= d[j + 1]


def test_index_nullity_direct_counts():
    res = ms.index_nullity(np.array([-2.0, -0.5, 1e-9, 3.0]), 1e-6)
    assert (res.index, res.nullity) == (2, 1)
    res = ms.index_nullity(np.array([0.5, 1.0, 2.0]), 1e-6)
    assert (res.index, res.nullity) == (0, 0)
    with pytest.raises(ms.InputError):
        ms.index_nullity(np.array([1.0]), 0.0)


def test_index_just_above_seventh_extremal_time():
    # lambda_k(7 pi) = k^2/49 - 1 < 0 iff k <= 6; at t just above 7 pi the
    # seventh eigenvalue still sits inside the nullity band
    t = 7 * math.pi + 1e-5
    op = circle_op(t, 4000)
    res = ms.solve_dirichlet(op, 8, want_vectors=False)
    ind = ms.index_nullity(res, 1e-4)
    assert ind.index == 6
    assert ind.nullity == 1


def test_rayleigh_on_eigenvector():
    # eigenvector identity; n kept moderate so the eps*||B|| accuracy of
    # the reported eigenvalue stays below the 1e-12 target
    op = circle_op(4.0, 100)
    res = ms.solve_dirichlet(op, 1)
    v = res.vectors[:, 0]
    assert ms.rayleigh(op, v) == pytest.approx(res.values[0], abs=1e-12)


def test_rayleigh_positive_for_mean_zero_before_first_conjugate():
    rng = np.random.default_rng(3)
    t = 5.0  # < 2 pi, so the constrained form is positive definite
    op = circle_op(t, 600)
    w = op.mean
    for _ in range(20):
        f = rng.standard_normal(op.size)
        f -= (w @ f) / (w @ w) * w
        assert ms.rayleigh(op, f) > 0.0


def test_rayleigh_hat_function_on_flat_line_positive():
    op = gap_op(0.5, 101)
    f = np.zeros(op.size)
    f[25] = 1.0
    assert ms.rayleigh(op, f) > 0.0


def test_rayleigh_zero_vector_rejected():
    op = circle_op(2.0, 50)
    with pytest.raises(ms.InputError):
        ms.rayleigh(op, np.zeros(op.size))


def test_min_max_consistency_random_probes():
    rng = np.random.default_rng(11)
    op = circle_op(9.0, 500)
    lam1 = ms.solve_twisted(op, 1, want_vectors=False).values[0]
    w = op.mean
    best = math.inf
    for _ in range(200):
        f = rng.standard_normal(op.size)
        f -= (w @ f) / (w @ w) * w
        best = min(best, ms.rayleigh(op, f))
    assert best >= lam1 - 1e-8


def test_domain_monotonicity_fixed_density():
    n_per_unit = 200
    ts = [2.0, 3.0, 5.0, 8.0, 13.0]
    prev_d = prev_t = None
    for t in ts:
        n = round(n_per_unit * t)
        op = circle_op(t, n)
        dres, tres = ms.solve_spectra(op, 6, 6)
        if prev_d is not None:
            assert np.all(prev_d >= dres.values - 1e-12)
            assert np.all(prev_t >= tres.values - 1e-12)
        prev_d, prev_t = dres.values, tres.values


def test_k_out_of_range():
    op = circle_op(2.0, 50)
    with pytest.raises(ms.InputError):
        ms.solve_dirichlet(op, 0)
    with pytest.raises(ms.InputError):
        ms.solve_dirichlet(op, 51)
    with pytest.raises(ms.InputError):
        ms.solve_twisted(op, 50)  # constrained problem has dimension n - 1
