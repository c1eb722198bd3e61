import math

import pytest

import tidaleq as te


def test_potential_and_base():
    B = te.InteractionCase.log()
    assert te.u0(B, math.e) == pytest.approx(math.pi)
    assert te.omega_from_a0(B, 2.0) == pytest.approx(math.sqrt(math.pi) / 2)
    base = te.make_base_state(B, 2.0, te.rigid_preset(math.sqrt(math.pi) / 2))
    assert base.dphi0_at_1 == pytest.approx(-math.sqrt(math.pi) / 2)
    assert abs(base.lambda0) < 1e-12
    assert te.c_n(B, 2) == pytest.approx(math.pi / 4)


def test_errors_map_to_python():
    with pytest.raises(ValueError):
        te.rigid_preset(-1.0)
    B = te.InteractionCase.log()
    op = te.assemble_operator(te.make_base_state(B, 2.0, te.rigid_preset(te.omega_from_a0(B, 2.0))), 32)
    assert op.scan().resonances == [2]
    with pytest.raises(te.ResonanceError):
        te.first_order_response(op, 1e-4)


def test_shape():
    h = te.ShapeCoeffs(4)
    h.set(1, 0.01)
    assert te.area(h) == pytest.approx(math.pi * (1 + 2e-4))
    assert te.injectivity_margin(te.ShapeCoeffs(2)) == pytest.approx(1 / math.sqrt(2))
    assert len(te.boundary(h, 16)) == 16


def test_solve_non_resonant():
    B = te.InteractionCase.log()
    base = te.make_base_state(B, 3.0, te.rigid_preset(te.omega_from_a0(B, 3.0)))
    op = te.assemble_operator(base, 128)
    sol = te.quasi_newton_solve(op, 1e-4)
    assert sol.residual_norm < 1e-8
    assert sol.diagnostics.symmetry_defect < 1e-10
    assert sol.a < 3.0
    fo = te.first_order_response(op, 1e-4)
    assert abs(fo.h1.coeff(1).imag) < 1e-14


def test_acceptance_entry_point():
    r = te.run_criterion(1)
    assert r.passed and r.id == 1
