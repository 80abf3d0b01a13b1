"""Smoke tests for the python bindings: a thin pass over each operation
surface, with the hand-derived two-level fixtures as anchors."""

import math

import numpy as np
import pytest

import markdyn as md

SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
P0 = np.array([[1, 0], [0, 0]], dtype=complex)
PLUS = 0.5 * np.ones((2, 2), dtype=complex)


def test_operator_core():
    assert md.op_norm(SX) == pytest.approx(1.0)
    c = md.commutator(PLUS, P0)
    assert np.allclose(c, 0.5 * np.array([[0, -1], [1, 0]]))
    dc = md.double_commutator(P0, SX)
    assert np.allclose(dc, SX)
    assert md.expectation(PLUS, np.eye(2, dtype=complex)) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        md.validate(np.diag([0.5, 0.5]).astype(complex), "projection")


def test_dynamics_and_marking():
    sys = md.DynamicalSystem(SY)
    assert sys.ground_energy() == pytest.approx(-1.0)
    u = sys.unitary(0.3)
    assert np.allclose(u @ u.conj().T, np.eye(2))

    # F1 closed form: Delta(t) = sin(2t)/2.
    assert md.mark_delta(sys, PLUS, P0, P0, math.pi / 4) == pytest.approx(0.5)
    assert md.manifested(sys, PLUS, P0, P0, 0.1, math.pi / 4)
    assert not md.manifested(sys, PLUS, P0, P0, 0.1, math.pi / 2)

    w_updated = md.luders_update(np.array([[1, 0], [0, 0]], dtype=complex), PLUS)
    assert np.allclose(w_updated, 0.5 * np.eye(2))

    flip = np.array([[0.7, 0.3], [0.3, 0.7]])
    assert np.allclose(md.classical_channel_update([1.0, 0.0], flip), [0.7, 0.3])


def test_profile_and_witness():
    sys = md.DynamicalSystem(SY)
    prof = md.profile(sys, PLUS, P0, P0, t_end=5 * math.pi / 4, n_grid=1024)
    assert prof.classification == "CSIP"
    locations = [z[0] for z in prof.zeros]
    assert locations == pytest.approx([math.pi / 2, math.pi], abs=1e-6)
    witness = md.manifestation_witness(prof, 1e-3)
    assert witness.applicable and witness.pass_
    assert witness.fraction > 0.99


def test_smearing():
    sys = md.DynamicalSystem(np.diag([0.0, 1.0]).astype(complex))
    result = md.gaussian_smear(sys, SX, 10)
    assert result.error_norm == pytest.approx(1 - math.exp(-1 / 40), abs=1e-8)
    spectral = md.gaussian_smear_spectral(sys, SX, 10)
    assert np.max(np.abs(result.smeared - spectral)) < 1e-10

    table = md.smear_convergence(sys, SX, [1, 10, 100])
    errors = [err for _, err in table]
    assert errors == sorted(errors, reverse=True)

    rounded = md.nearest_projection(math.exp(-1 / 40) * SX)
    assert np.allclose(rounded, PLUS, atol=1e-10)
    report = md.delta_indistinguishable(PLUS, rounded, 0.01)
    assert report.close


def test_lattice():
    sys = md.LatticeSystem(4, "random", seed=7)
    assert sys.dim == 16
    sz = np.diag([1.0, -1.0]).astype(complex)
    embedded = md.embed_local(sys, sz, 3, 3)
    stepped = md.brickwork_step(sys, embedded, "heisenberg")
    support = md.support_region(stepped, 4)
    assert support is not None and support[0] >= 1

    assert md.lightcone(3, 3, 1, 8) == (1, 5)

    w = np.eye(16, dtype=complex) / 16
    res = md.shielding_check(sys, w, 0, 0, P0, 3, 3, sz, 1)
    assert res.spacelike and abs(res.delta) <= 1e-12

    steps = md.local_mark_profile(sys, w, 0, 0, P0, 3, 3, sz, 2)
    assert [s.step for s in steps] == [0, 1, 2]
    assert steps[0].spacelike and not steps[2].spacelike


def test_random_instance_and_verify():
    h1, w1, p1, q1 = md.random_instance(3, seed=5)
    h2, w2, p2, q2 = md.random_instance(3, seed=5)
    assert np.array_equal(h1, h2) and np.array_equal(w1, w2)
    assert np.array_equal(p1, p2) and np.array_equal(q1, q2)
    md.validate(p1, "projection")
    md.validate(w1, "density")

    results = md.run_verify(seed=42, trials=5)
    assert len(results) == 30
    assert all(passed for _, passed, _ in results)
