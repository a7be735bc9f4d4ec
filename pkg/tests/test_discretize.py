import math

import numpy as np
import pytest

import morse_spectrum as ms
from morse_spectrum.discretize import tridiagonal_dirichlet_eigenvalue


def circle_op(t, n, b_sq=1.0):
    fam = ms.circle_interval_family(t_max=max(25.0, t))
    return ms.assemble_interval(ms.domain_at(fam, t), b_sq, n)


def test_interval_entries_match_stencil():
    op = circle_op(math.pi, 3)
    h = math.pi / 4
    # generalized pencil (A, M) with A = h*T: T has diagonal 2/h^2 - 1
    np.testing.assert_allclose(op.diag / op.mass, np.full(3, 2 / h**2 - 1.0), rtol=1e-14)
    np.testing.assert_allclose(op.offdiag / h, np.full(2, -1 / h**2), rtol=1e-14)
    np.testing.assert_allclose(op.mass, np.full(3, h), rtol=1e-15)


def test_stiffness_exactly_symmetric():
    for op in (
        circle_op(2.5, 40),
        ms.assemble_interval(ms.domain_at(ms.flat_gap_family(), 0.5), 0.0, 25),
        ms.assemble_radial(ms.domain_at(ms.cylinder_disk_family(), 2.0), ms.UNIT_CYLINDER, 0, 50),
        ms.assemble_radial(ms.domain_at(ms.sphere_cap_family(), 1.5), ms.UNIT_SPHERE2, 3, 50),
    ):
        a = op.stiffness()
        assert np.max(np.abs(a - a.T)) == 0.0
        assert np.min(op.mass) > 0.0


def test_smallest_discrete_eigenvalue_closed_form():
    op = circle_op(math.pi, 3)
    h = math.pi / 4
    vals = np.linalg.eigvalsh(op.stiffness() / h)  # M = h I
    expected = tridiagonal_dirichlet_eigenvalue(1, math.pi, h, 1.0)
    assert vals[0] == pytest.approx(expected, rel=1e-13)


@pytest.mark.parametrize("t,n", [(math.pi, 40), (7.0, 101), (2.0, 64)])
def test_closed_form_full_spectrum(t, n):
    op = circle_op(t, n)
    h = t / (n + 1)
    vals = ms.solve_dirichlet(op, n, want_vectors=False).values
    expected = np.array([tridiagonal_dirichlet_eigenvalue(j, t, h, 1.0) for j in range(1, n + 1)])
    np.testing.assert_allclose(vals, expected, rtol=1e-10, atol=1e-10)


def test_gap_blocks_are_congruent():
    op = ms.assemble_interval(ms.domain_at(ms.flat_gap_family(), 0.5), 0.0, 30)
    assert len(op.blocks) == 2
    (a0, b0), (a1, b1) = op.blocks
    np.testing.assert_array_equal(op.diag[a0:b0], op.diag[a1:b1])
    # decoupled: the joint entry of the off-diagonal is exactly zero
    assert op.offdiag[b0 - 1] == 0.0
    vals = ms.solve_dirichlet(op, 6, want_vectors=False).values
    np.testing.assert_allclose(vals[0::2], vals[1::2], rtol=1e-14)


def test_flat_line_stiffness_positive_definite():
    op = ms.assemble_interval(ms.domain_at(ms.flat_gap_family(), 0.7), 0.0, 40)
    np.linalg.cholesky(op.stiffness())  # raises if not positive definite


def test_mean_functional_interval():
    op = circle_op(math.pi, 3)
    np.testing.assert_allclose(ms.mean_functional(op), np.full(3, math.pi / 4), rtol=1e-15)


def test_mean_functional_rectangle_rule_on_constant():
    t, n = 2.0, 57
    op = circle_op(t, n)
    assert ms.mean_functional(op) @ np.ones(n) == pytest.approx(n * t / (n + 1), rel=1e-14)


def test_mean_vanishing_at_boundary_is_second_order():
    # w'f matches the integral to O(h^2) once f vanishes at the endpoints
    t = 2.0
    errs = []
    for n in (50, 100, 200):
        op = circle_op(t, n)
        x = np.linspace(0, t, n + 2)[1:-1]
        f = np.sin(math.pi * x / t)
        exact = 2 * t / math.pi
        errs.append(abs(op.mean @ f - exact))
    rate = np.log2(errs[0] / errs[1]), np.log2(errs[1] / errs[2])
    assert min(rate) > 1.8


def test_radial_mean_vector():
    slc = ms.domain_at(ms.cylinder_disk_family(), 2.0)
    op0 = ms.assemble_radial(slc, ms.UNIT_CYLINDER, 0, 60)
    np.testing.assert_array_equal(op0.mean, op0.mass)
    op1 = ms.assemble_radial(slc, ms.UNIT_CYLINDER, 1, 60)
    assert not np.any(op1.mean)


def test_input_errors():
    slc = ms.domain_at(ms.circle_interval_family(), 2.0)
    with pytest.raises(ms.InputError):
        ms.assemble_interval(slc, 1.0, 2)
    rad = ms.domain_at(ms.cylinder_disk_family(), 2.0)
    with pytest.raises(ms.InputError):
        ms.assemble_radial(rad, ms.UNIT_CYLINDER, -1, 50)
    with pytest.raises(ms.InputError):
        ms.assemble_radial(rad, ms.CIRCLE_IMMERSED_LINE, 0, 50)
    with pytest.raises(ms.InputError):
        ms.assemble_interval(rad, 1.0, 50)  # radial slice into interval assembly


def test_quad_form_matches_dense():
    rng = np.random.default_rng(7)
    op = circle_op(3.0, 35)
    a = op.stiffness()
    for _ in range(5):
        f = rng.standard_normal(op.size)
        assert op.quad_form(f) == pytest.approx(f @ a @ f, rel=1e-12)
