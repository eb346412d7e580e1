import random
from fractions import Fraction

import pytest

from catembed.circuits import (
    Identity,
    Par,
    Seq,
    Swap,
    clifford_t,
    evaluate,
    gate_ref,
    par,
    seq,
)
from catembed.cyclotomic import CycElement, omega3, rational, sqrt3, zeta
from catembed.simulate import (
    MAX_SIM_DIM,
    SimulationError,
    apply_circuit,
    basis_state,
    evaluate_by_columns,
    state_make,
    tensor_states,
)

CT = clifford_t()


def test_state_make():
    s = state_make([1, 0])
    assert s.norm_sq == rational(1)
    psi = state_make([1, zeta(8)])
    assert psi.norm_sq == rational(2)
    w3 = omega3()
    i = zeta(4)
    cat = state_make([-w3 - i * w3 * w3, 1])
    assert cat.norm_sq == rational(3) - sqrt3()
    with pytest.raises(ValueError):
        state_make([0, 0])


def test_apply_matches_matrix_action():
    rng = random.Random(9)
    for _ in range(15):
        depth = rng.randint(1, 3)
        c = _random_circuit(rng, depth)
        m = evaluate(c, CT)
        amps = [CycElement(8, {rng.randrange(8): Fraction(rng.randint(-2, 2))}) for _ in range(c.dimension)]
        if all(a.is_zero() for a in amps):
            amps[0] = CycElement.one()
        s = state_make(amps)
        got = apply_circuit(c, CT, s)
        want = m @ s.column()
        assert list(got.amplitudes) == list(want.entries)
        # unitarity conserves the squared norm
        assert got.norm_sq == s.norm_sq


def _random_circuit(rng, depth):
    if depth == 0:
        kind = rng.choice(["gate", "id", "swap"])
        if kind == "gate":
            return gate_ref(rng.choice(["H", "T"]), CT)
        if kind == "id":
            return Identity(2)
        return Swap(2, 2)
    if rng.random() < 0.5:
        a = _random_circuit(rng, depth - 1)
        b = _random_circuit(rng, depth - 1)
        if a.dimension * b.dimension <= 16:
            return Par(a, b)
    inner = _random_circuit(rng, depth - 1)
    return Seq(inner, inner)


def test_apply_identity_and_h():
    s = basis_state(4, 2)
    assert apply_circuit(Identity(4), CT, s) == s
    # exact matrix applied to unnormalised input; norm recomputed
    h_on_zero = apply_circuit(gate_ref("H", CT), CT, basis_state(2, 0))
    half_sqrt2 = (zeta(8) + zeta(8, 7)) / 2
    assert list(h_on_zero.amplitudes) == [half_sqrt2, half_sqrt2]
    assert h_on_zero.norm_sq == rational(1)


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        apply_circuit(Identity(4), CT, basis_state(2, 0))


def test_sim_cap():
    with pytest.raises(SimulationError):
        state_make([1] * (MAX_SIM_DIM + 1))


def test_evaluate_by_columns_agrees():
    c = seq(par(gate_ref("H", CT), Identity(2)), gate_ref("CX", CT))
    assert evaluate_by_columns(c, CT) == evaluate(c, CT)


def test_tensor_states():
    a = state_make([1, 2])
    b = state_make([3, 5])
    t = tensor_states(a, b)
    assert [x.as_fraction() for x in t.amplitudes] == [3, 5, 6, 10]
    assert t.norm_sq == a.norm_sq * b.norm_sq
