import random
from fractions import Fraction

import pytest

from catembed.circuits import (
    Identity,
    Par,
    clifford_t_plus_E,
    evaluate,
    gate_ref,
    par,
    rx3_gateset,
    seq,
)
from catembed.companion import catalog_get, order3_rotation_candidate
from catembed.cyclotomic import (
    CycElement,
    imag_unit,
    rational,
    sqrt2,
    sqrt5,
    zeta,
)
from catembed.embedding import (
    NotNormal,
    RingViolation,
    TemplateMismatch,
    catalytic_check,
    classify,
    concat,
    decompose_matrix,
    lift_circuit,
    lift_gateset,
    phi_apply,
    preembed_make,
    projector_family,
    trace_reconstruct,
)
from catembed.matrix import ExactMatrix, Polynomial
from catembed.rings import RingSpec, make_tower

HALF = Fraction(1, 2)


@pytest.fixture(scope="module")
def pe5():
    return catalog_get("sqrt5/Q").preembedding


@pytest.fixture(scope="module")
def pe_omega(catalog):
    return catalog["omega/D (concat)"].preembedding


def test_preembed_validates_sqrt5(pe5):
    s5 = sqrt5()
    assert pe5.char_power == 1
    expected = ExactMatrix.from_rows(
        [[HALF * (1 + s5 / 5), s5 / 5], [s5 / 5, HALF * (1 - s5 / 5)]]
    )
    assert pe5.projector == expected


def test_preembed_egate_lambda_is_omega85_hs(catalog):
    entry = catalog["omega3/Domega8"]
    h = ExactMatrix.from_rows([[1, 1], [1, -1]]).scale(sqrt2() / 2)
    s = ExactMatrix.diagonal([1, imag_unit()])
    assert entry.lam == (h @ s).scale(zeta(8, 5))


def test_preembed_rejects_non_normal():
    tower = make_tower(RingSpec.rationals(None, conductor=5, name="Q"), sqrt5())
    with pytest.raises(NotNormal):
        preembed_make(tower, ExactMatrix.from_rows([[0, 1], [5, 0]]))


def test_preembed_rejects_wrong_polynomial():
    tower = make_tower(RingSpec.rationals(None, conductor=5, name="Q"), sqrt5())
    from catembed.embedding import NotAnnihilated

    with pytest.raises(NotAnnihilated):
        preembed_make(tower, ExactMatrix.from_rows([[0, 1], [1, 0]]))  # x^2 - 1, not x^2 - 5


def test_preembed_rejects_ring_violation():
    tower = make_tower(RingSpec.rationals(frozenset(), conductor=5, name="Z"), sqrt5())
    with pytest.raises(RingViolation):
        preembed_make(tower, ExactMatrix.from_rows([[HALF, 2], [2, -HALF]]))


def test_phi_apply_basics(pe5):
    s5 = sqrt5()
    assert phi_apply(pe5, ExactMatrix.identity(3)).is_identity()
    assert phi_apply(pe5, ExactMatrix.from_rows([[s5]])) == pe5.lam
    with pytest.raises(RingViolation):
        phi_apply(pe5, ExactMatrix.from_rows([[zeta(3)]]))


def test_phi_ring_strictness(catalog):
    pe = catalog["omega8/Di"].preembedding
    bad = ExactMatrix.from_rows([[CycElement.rational(Fraction(1, 3))]])
    with pytest.raises(RingViolation):
        phi_apply(pe, bad)  # 1/3 outside Z[1/2, i]
    assert phi_apply(pe, bad, ring_strict=False).rows == 2


def test_catalytic_check_examples(pe5):
    assert catalytic_check(pe5, ExactMatrix.from_rows([[sqrt5()]]))
    assert catalytic_check(pe5, ExactMatrix.identity(2))
    rng = random.Random(1)
    for _ in range(5):
        m = ExactMatrix(
            2,
            2,
            [
                rational(Fraction(rng.randint(-4, 4), 2)) + rational(rng.randint(-2, 2)) * sqrt5()
                for _ in range(4)
            ],
        )
        assert catalytic_check(pe5, m)


def test_projector_family_sqrt5(pe5):
    s5 = sqrt5()
    fam = projector_family(pe5, probes=[ExactMatrix.from_rows([[s5]])])
    assert len(fam) == 2
    total = fam[0][1] + fam[1][1]
    assert total.is_identity()
    tau_pi = next(m for g, m in fam if not g.exponent == 1)
    assert phi_apply(pe5, ExactMatrix.from_rows([[s5]])) @ ExactMatrix.identity(1).tensor(
        tau_pi
    ) == tau_pi.scale(-s5)


def test_projector_family_degree_one():
    tower = make_tower(RingSpec.rationals(None, name="Q"), rational(7))
    pe = preembed_make(tower, ExactMatrix.from_rows([[7]]))
    fam = projector_family(pe)
    assert len(fam) == 1 and fam[0][1].is_identity()


def test_projector_family_omega_concat(pe_omega):
    probe = ExactMatrix.from_rows([[zeta(8)]])
    fam = projector_family(pe_omega, probes=[probe])
    assert len(fam) == 4
    exps = sorted(g.exponent for g, _ in fam)
    assert exps == [1, 3, 5, 7]
    assert trace_reconstruct(pe_omega, probe) == phi_apply(pe_omega, probe)


def test_concat_reproduces_printed_four_dim(catalog):
    pe1 = catalog["omega8/Di"].preembedding
    pe2 = catalog["i/D"].preembedding
    pe = concat(pe1, pe2)
    assert pe.lam == ExactMatrix.from_rows(
        [[0, 0, 1, 0], [0, 0, 0, 1], [0, 1, 0, 0], [-1, 0, 0, 0]]
    )
    assert pe.lam.char_poly() == Polynomial.from_rational_coeffs([1, 0, 0, 0, 1])
    assert pe.projector == pe1.projector.tensor(pe2.projector)
    # Lambda^2 = I2 (x) Lambda2 and Lambda^3 = Phi2(i Lambda1)
    assert pe.lam_power(2) == ExactMatrix.identity(2).tensor(pe2.lam)
    assert pe.lam_power(3) == phi_apply(pe2, pe1.lam.scale(imag_unit()))


def test_concat_with_trivial_tower(pe5):
    # a degree-1 outer tower leaves the embedding unchanged (up to a 1x1 tensor)
    q = RingSpec.rationals(None, conductor=5, name="Q")
    trivial = preembed_make(make_tower(q, rational(3)), ExactMatrix.from_rows([[3]]))
    composite = concat(pe5, trivial)
    assert composite.lam == pe5.lam
    assert composite.projector == pe5.projector.tensor(ExactMatrix.identity(1))


def test_decompose_matrix_unique(pe_omega):
    rng = random.Random(2)
    w = zeta(8)
    for _ in range(10):
        parts = [
            ExactMatrix.from_rows([[Fraction(rng.randint(-3, 3), 2)]]) for _ in range(4)
        ]
        m = ExactMatrix.zeros(1, 1)
        for j, p in enumerate(parts):
            m = m + p.scale(w**j)
        got = decompose_matrix(pe_omega, m)
        assert all(g == p for g, p in zip(got, parts))


# -- lifting -------------------------------------------------------------------


@pytest.fixture(scope="module")
def egate_lift(catalog):
    pe = catalog["omega3/Domega8"].preembedding
    source = clifford_t_plus_E()
    target = clifford_t_plus_E()  # superset of clifford_t_ext; fine as target
    templates = {
        "E": seq(
            gate_ref("CS", target),
            gate_ref("CH", target),
            Par(gate_ref("T", target), Identity(2)),
            Par(gate_ref("Z", target), Identity(2)),
        ),
        "H": Par(gate_ref("H", target), Identity(2)),
        "T": Par(gate_ref("T", target), Identity(2)),
        "CX": Par(gate_ref("CX", target), Identity(2)),
    }
    return pe, source, target, lift_gateset(pe, source, templates, target)


def test_lift_gateset_accepts_controlled_template(egate_lift, catalog):
    pe, source, target, embeddings = egate_lift
    lam = catalog["omega3/Domega8"].lam
    assert evaluate(embeddings["E"].embedded_circuit, target) == ExactMatrix.identity(
        2
    ).direct_sum(lam)


def test_lift_gateset_rejects_wrong_template(egate_lift):
    pe, source, target, _ = egate_lift
    with pytest.raises(TemplateMismatch):
        lift_gateset(pe, source, {"E": Par(gate_ref("H", target), Identity(2))}, target)


def test_lift_identity(egate_lift):
    pe, source, target, embeddings = egate_lift
    lifted = lift_circuit(embeddings, Identity(4), pe.dimension)
    assert evaluate(lifted, target).is_identity()


def test_lift_circuit_catalytic_law(egate_lift):
    pe, source, target, embeddings = egate_lift
    c = seq(par(gate_ref("E", source), Identity(2)), gate_ref("CX", source))
    lifted = lift_circuit(embeddings, c, pe.dimension)
    u = evaluate(c, source)
    lifted_eval = evaluate(lifted, target)
    ixp = ExactMatrix.identity(4).tensor(pe.projector)
    assert lifted_eval @ ixp == u.tensor(pe.projector)
    assert ixp @ lifted_eval == u.tensor(pe.projector)
    # block form: compressing both sides gives e(c) (x) Pi
    assert ixp @ lifted_eval @ ixp == u.tensor(pe.projector)


def test_lift_par_swap_formula(egate_lift):
    pe, source, target, embeddings = egate_lift
    c = par(gate_ref("E", source), gate_ref("E", source))
    lifted = lift_circuit(embeddings, c, pe.dimension)
    k = pe.dimension
    phi_e = evaluate(embeddings["E"].embedded_circuit, target)
    from catembed.matrix import swap_matrix

    expected = (
        ExactMatrix.identity(2).tensor(phi_e)
        @ ExactMatrix.identity(2).tensor(swap_matrix(k, 2))
        @ phi_e.tensor(ExactMatrix.identity(2))
        @ ExactMatrix.identity(2).tensor(swap_matrix(2, k))
    )
    assert evaluate(lifted, target) == expected
    u = evaluate(c, source)
    assert evaluate(lifted, target) @ ExactMatrix.identity(4).tensor(pe.projector) == u.tensor(
        pe.projector
    )


def test_lift_uncovered_gate(egate_lift):
    pe, source, target, embeddings = egate_lift
    partial = {"E": embeddings["E"]}
    with pytest.raises(KeyError):
        lift_circuit(partial, gate_ref("H", source), pe.dimension)


def test_two_template_sets_same_lifted_evaluation(egate_lift, catalog):
    # uniqueness of the induced map: evaluation-equal templates lift equally
    pe, source, target, embeddings = egate_lift
    alt_templates = {
        "E": seq(
            Par(gate_ref("T", target), Identity(2)),
            gate_ref("CS", target),
            gate_ref("CH", target),
            Par(gate_ref("Z", target), Identity(2)),
        )
    }
    alt = lift_gateset(pe, source, alt_templates, target)
    assert alt["E"].embedded_circuit != embeddings["E"].embedded_circuit
    c = seq(par(gate_ref("E", source), Identity(2)), gate_ref("CX", source))
    l1 = lift_circuit({**embeddings}, c, pe.dimension)
    l2 = lift_circuit({**embeddings, "E": alt["E"]}, c, pe.dimension)
    assert evaluate(l1, target) == evaluate(l2, target)


# -- classification -------------------------------------------------------------


def test_classify_candidate_one_not_strong():
    candidate, pi = order3_rotation_candidate(1)
    report = classify(candidate, pi, rx3_gateset(), 3)
    assert report.verdict == "not_strong"
    assert set(report.witness) == {"R.R.R", "X.X"}


def test_classify_candidate_two_strong_not_linear():
    candidate, pi = order3_rotation_candidate(2)
    report = classify(candidate, pi, rx3_gateset(), 5)
    assert report.verdict == "strong_not_linear"
    # the printed five-term relation: e(RXR) + e(RRXRR) = -e(X)
    gs = rx3_gateset()
    eR, eX = gs.get("R").evaluation, gs.get("X").evaluation
    assert eR @ eX @ eR + eR @ eR @ eX @ eR @ eR == eX.scale(-1)
    pR, pX = candidate["R"], candidate["X"]
    assert pR @ pX @ pR + pR @ pR @ pX @ pR @ pR != pX.scale(-1)


def test_classify_candidate_three_linear():
    candidate, pi = order3_rotation_candidate(3)
    report = classify(candidate, pi, rx3_gateset(), 5)
    assert report.verdict == "linear_consistent"


def test_classify_rejects_non_catalytic_candidate():
    candidate, pi = order3_rotation_candidate(1)
    broken = dict(candidate)
    broken["R"] = ExactMatrix.identity(6)
    with pytest.raises(ValueError):
        classify(broken, pi, rx3_gateset(), 2)
