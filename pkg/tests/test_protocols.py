import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gpt_tomo.errors import ContractError, MissingCertificateError
from gpt_tomo.model import boxtimes_state
from gpt_tomo.protocols import (
    Assemblage,
    BellTable,
    axis_measurement,
    bct_swap_resource,
    bell_table,
    binary_measurement,
    data_hiding_audit,
    default_measurements,
    dense_code_bct,
    deterministic_table,
    lhs_check,
    lhv_membership,
    local_encode_rebit,
    locc_decode,
    pr_box,
    rebit_swap_resource,
    secret_sharing_conditions,
    steering_assemblage,
    teleportage_constancy,
)
from gpt_tomo.theories import bct_level, named_states, omega_pair, rebit_state, resolve_theory
from gpt_tomo.theories.sampling import random_tnl_only
from gpt_tomo.tomography import decompose

from oracles import effect_rebit, ptrace_a, rho_two_rebit, string

SIGMA_X, SIGMA_Z = binary_measurement(0.0), binary_measurement(np.pi / 2)


# ----------------------------------------------------------------- measurements


def test_binary_measurement_effects():
    np.testing.assert_allclose(effect_rebit(SIGMA_Z[0]), np.diag([1.0, 0.0]), atol=1e-15)
    np.testing.assert_allclose(SIGMA_X.sum(axis=0), [1.0, 0.0, 0.0], atol=1e-15)


def test_axis_measurement_normalises_axis():
    m = axis_measurement([0.0, 1.0, 0.0])
    np.testing.assert_allclose(m, [[0.5, 0, 0.5, 0], [0.5, 0, -0.5, 0]])
    np.testing.assert_allclose(axis_measurement([0.0, 0.0, 3.0]), axis_measurement([0.0, 0.0, 1.0]))


@pytest.mark.parametrize("name", ["rebit", "qubit"])
def test_default_measurements_are_valid(name):
    system = resolve_theory(name)
    meas = default_measurements(system, seed=3)
    assert len(meas) >= 10
    for m in meas:
        np.testing.assert_allclose(m.sum(axis=0), system.unit_effect, atol=1e-12)
        assert all(system.is_effect(e) for e in m)
    np.testing.assert_allclose(np.stack(meas), np.stack(default_measurements(system, seed=3)))


def test_bell_table_rejects_bad_measurements(two_rebit):
    phi = named_states("two-rebit")["phi-plus"]
    with pytest.raises(ContractError):
        bell_table(phi, [SIGMA_X[:1]], [SIGMA_Z], two_rebit)
    with pytest.raises(ContractError):
        bell_table(phi, [2 * SIGMA_X], [SIGMA_Z], two_rebit)
    with pytest.raises(ContractError):
        bell_table(phi[:4], [SIGMA_X], [SIGMA_Z], two_rebit)


# ------------------------------------------------------------------ Bell tables


def test_omega_tables_are_uniform(two_rebit):
    # Trace oracle: omega+ = (1 + YY)/4 and every product of real projectors
    # has zero overlap with YY.
    plus, minus = omega_pair()
    np.testing.assert_allclose(rho_two_rebit(plus), (np.eye(4) + string("YY")) / 4)
    for omega in (plus, minus):
        t = bell_table(omega, [SIGMA_X, SIGMA_Z], [SIGMA_X, SIGMA_Z], two_rebit)
        np.testing.assert_allclose(t.probs, 0.25, atol=1e-12)


def test_phi_plus_is_perfectly_correlated_in_z(two_rebit):
    t = bell_table(named_states("two-rebit")["phi-plus"], [SIGMA_Z], [SIGMA_Z], two_rebit)
    np.testing.assert_allclose(t.probs[0, 0], [[0.5, 0.0], [0.0, 0.5]], atol=1e-12)
    assert t.prob(0, 0, 0, 0) == pytest.approx(0.5)
    np.testing.assert_allclose(t.marginal_a(), [[0.5, 0.5]])
    np.testing.assert_allclose(t.marginal_b(), [[0.5, 0.5]])


@given(st.integers(0, 10_000))
def test_bell_table_blind_to_holistic_part(seed):
    comp = resolve_theory("two-rebit")
    dec = decompose(comp)
    g = np.random.default_rng(seed)
    omega = g.dirichlet(np.ones(len(comp.joint.state_generators))) @ comp.joint.state_generators
    ma = [binary_measurement(t) for t in g.uniform(0, 2 * np.pi, 3)]
    mb = [binary_measurement(t) for t in g.uniform(0, 2 * np.pi, 2)]
    full, tl = bell_table(omega, ma, mb, comp), bell_table(dec.tl_part(omega), ma, mb, comp)
    np.testing.assert_allclose(full.probs, tl.probs, atol=1e-12)
    # No signalling in both directions.
    pa, pb = full.probs.sum(axis=3), full.probs.sum(axis=2)
    np.testing.assert_allclose(pa, pa[:, :1].repeat(2, axis=1), atol=1e-12)
    np.testing.assert_allclose(pb, pb[:1].repeat(3, axis=0), atol=1e-12)


def test_table_matches_trace_oracle(two_rebit, rng):
    phi = named_states("two-rebit")["phi-plus"]
    theta = rng.uniform(0, 2 * np.pi, 2)
    t = bell_table(phi, [binary_measurement(theta[0])], [binary_measurement(theta[1])], two_rebit)
    rho = rho_two_rebit(phi)
    for a, b in itertools.product(range(2), repeat=2):
        op = np.kron(effect_rebit(binary_measurement(theta[0])[a]), effect_rebit(binary_measurement(theta[1])[b]))
        assert t.probs[0, 0, a, b] == pytest.approx(np.trace(op @ rho).real, abs=1e-12)


def test_bell_table_validation():
    with pytest.raises(ContractError):
        BellTable(np.full((1, 1, 2, 2), 0.3))
    p = np.zeros((2, 1, 2, 2))
    p[0, 0, 0, 0] = p[1, 0, 1, 0] = 1.0
    BellTable(p)
    p = np.zeros((1, 2, 2, 2))
    p[0, 0, 0, 0] = p[0, 1, 1, 1] = 1.0
    with pytest.raises(ContractError):
        BellTable(p)


def test_pr_box_is_not_local():
    box = pr_box()
    assert box.prob(0, 0, 1, 1) == 0.0 and box.prob(0, 1, 1, 1) == 0.5
    res = lhv_membership(box)
    assert not res.feasible and res.weights == {}


def test_deterministic_table_is_its_own_model():
    t = deterministic_table((0, 1), (1, 1))
    res = lhv_membership(t)
    assert res.feasible
    assert res.weights == {((0, 1), (1, 1)): pytest.approx(1.0)}


def test_mixture_of_strategies_recovered():
    t = BellTable(0.5 * deterministic_table((0, 0), (0, 1)).probs + 0.5 * deterministic_table((1, 0), (1, 1)).probs)
    res = lhv_membership(t)
    assert res.feasible
    assert sum(res.weights.values()) == pytest.approx(1.0)


def test_lhv_strategy_limit():
    p = np.full((9, 1, 4, 1), 0.25)
    with pytest.raises(ContractError):
        lhv_membership(BellTable(p))


def test_chsh_quantum_violation(two_rebit):
    phi = named_states("two-rebit")["phi-plus"]
    ma = [binary_measurement(0.0), binary_measurement(np.pi / 2)]
    mb = [binary_measurement(np.pi / 4), binary_measurement(-np.pi / 4)]
    table = bell_table(phi, ma, mb, two_rebit)
    assert not lhv_membership(table).feasible
    assert lhv_membership(bell_table(omega_pair()[0], ma, mb, two_rebit)).feasible


# --------------------------------------------------------------------- steering


def test_assemblage_of_phi_plus(two_rebit):
    asm = steering_assemblage(named_states("two-rebit")["phi-plus"], [SIGMA_Z], two_rebit)
    # Oracle: Bob keeps Tr_A[(P_a x 1) Phi+] = P_a / 2.
    np.testing.assert_allclose(asm.element(0, 0), 0.5 * rebit_state(np.pi / 2), atol=1e-12)
    rho = rho_two_rebit(named_states("two-rebit")["phi-plus"])
    bob = ptrace_a(np.kron(np.diag([1.0, 0.0]), np.eye(2)) @ rho)
    np.testing.assert_allclose(bob, np.diag([0.5, 0.0]), atol=1e-12)


def test_assemblage_validation():
    unit = np.array([1.0, 0.0, 0.0])
    good = np.array([[[0.5, 0, 0.5], [0.5, 0, -0.5]]])
    Assemblage(good, np.zeros((1, 2, 3)), unit)
    with pytest.raises(ContractError):
        Assemblage(0.5 * good, np.zeros((1, 2, 3)), unit)
    signalling = np.array([[[0.5, 0, 0.5], [0.5, 0, -0.5]], [[0.5, 0.1, 0], [0.5, 0, 0]]])
    with pytest.raises(ContractError):
        Assemblage(signalling, np.zeros((2, 2, 3)), unit)


@pytest.mark.parametrize("seed", range(4))
def test_lhs_model_for_tnl_only(two_rebit, seed):
    omega, _ = random_tnl_only(two_rebit, np.random.default_rng(seed))
    asm = steering_assemblage(omega, default_measurements(two_rebit.sys_a, seed), two_rebit)
    verdict = lhs_check(asm, omega, two_rebit)
    assert verdict.passed and verdict.residual <= 1e-9


def test_lhs_refuses_bell_state(two_rebit):
    phi = named_states("two-rebit")["phi-plus"]
    asm = steering_assemblage(phi, [SIGMA_X, SIGMA_Z], two_rebit)
    with pytest.raises(MissingCertificateError):
        lhs_check(asm, phi, two_rebit)


def test_bct_assemblage_has_lhs_model(bct):
    omega = bct_level(1, 0, "-")
    meas = [np.eye(2), np.array([[0.3, 0.6], [0.7, 0.4]])]
    assert lhs_check(steering_assemblage(omega, meas, bct), omega, bct).passed


# ---------------------------------------------------------------- teleportation


def _bell_effects(comp):
    return comp.measurements["bell"]


def test_product_resource_gives_same_vector_for_all_inputs(two_rebit):
    v = rebit_state(0.7, 0.8)
    omega = boxtimes_state(two_rebit, rebit_state(1.3), v)
    inputs = np.array([rebit_state(t) for t in np.linspace(0, 6, 10)])
    verdict = teleportage_constancy(omega, _bell_effects(two_rebit), inputs, two_rebit)
    assert verdict.passed
    # Bob's unnormalised state has a psi-dependent weight but always points at v.
    for k in range(len(_bell_effects(two_rebit))):
        for n in range(len(inputs)):
            b = verdict.b_vectors[k, n]
            np.testing.assert_allclose(b, b[0] * v, atol=1e-12)


def test_omega_resource_has_no_holistic_term(two_rebit):
    inputs = np.array([rebit_state(t) for t in np.linspace(0, 6, 12)])
    for omega in omega_pair():
        verdict = teleportage_constancy(omega, _bell_effects(two_rebit), inputs, two_rebit)
        assert verdict.passed and verdict.holistic_norm <= 1e-12


def test_teleport_refuses_bell_resource(two_rebit):
    with pytest.raises(MissingCertificateError):
        teleportage_constancy(named_states("two-rebit")["phi-plus"], _bell_effects(two_rebit), [rebit_state(0)], two_rebit)


def test_teleport_system_mismatch(two_rebit, bct):
    with pytest.raises(ContractError):
        teleportage_constancy(omega_pair()[0], np.ones((1, 8)), [[1.0, 0.0]], two_rebit, comp_sa=bct)


# ------------------------------------------------------------------ dense coding


@pytest.mark.parametrize("message", [(0, 0), (0, 1), (1, 0), (1, 1)])
def test_dense_coding_messages(message):
    t = dense_code_bct(message, seed=5)
    assert t.passed
    assert t.tables["decoded"] == list(message)
    assert t.tables["success_probability"] == pytest.approx(1.0, abs=1e-12)
    assert t.tables["product_only_y_success"] == pytest.approx(0.5, abs=1e-9)
    assert t.tables["product_only_x_success"] == pytest.approx(1.0, abs=1e-9)
    d = t.to_dict()
    assert d["passed"] and d["seed"] == 5 and d["protocol"] == "densecode"


def test_dense_coding_rejects_non_bits():
    with pytest.raises(ContractError):
        dense_code_bct((2, 0))


# ------------------------------------------------------------------ data hiding


def test_rebit_hiding_pair(two_rebit):
    audit = data_hiding_audit(*omega_pair(), two_rebit)
    assert audit.verdict == "perfectly secure"
    assert audit.worst_local_gap <= 1e-12
    assert audit.measurement == "yy-parity"
    assert audit.discrimination_error <= 1e-12
    assert audit.to_dict()["verdict"] == "perfectly secure"


def test_bct_hiding_pair(bct):
    audit = data_hiding_audit(bct_level(0, 1, "+"), bct_level(0, 1, "-"), bct)
    assert audit.verdict == "perfectly secure" and audit.measurement == "sign"


def test_distinct_products_are_not_hidden(two_rebit):
    w0 = boxtimes_state(two_rebit, rebit_state(0.0), rebit_state(0.0))
    w1 = boxtimes_state(two_rebit, rebit_state(np.pi), rebit_state(0.0))
    audit = data_hiding_audit(w0, w1, two_rebit)
    assert not audit.local_indistinguishable
    assert audit.worst_local_gap == pytest.approx(1.0)
    assert audit.verdict == "insecure"


def test_bell_states_fail_tl_free(two_rebit):
    states = named_states("two-rebit")
    audit = data_hiding_audit(states["phi-plus"], states["psi-minus"], two_rebit, measurement=two_rebit.measurements["bell"][[0, 3]])
    assert not audit.tl_free and audit.verdict == "insecure"


def test_local_encoding_flips_the_sign(two_rebit):
    plus, minus = omega_pair()
    np.testing.assert_allclose(local_encode_rebit(0), plus)
    np.testing.assert_allclose(local_encode_rebit(1), minus, atol=1e-12)
    # Oracle: (Z x 1)(1 + YY)(Z x 1) = 1 - YY.
    zi = string("ZI")
    np.testing.assert_allclose(zi @ rho_two_rebit(plus) @ zi, rho_two_rebit(minus), atol=1e-12)
    with pytest.raises(ContractError):
        local_encode_rebit(2)


# ------------------------------------------------------------- LOCC decoding


@pytest.mark.parametrize("x", [0, 1])
def test_locc_decode(x):
    t = locc_decode(x, seed=11, runs=500)
    assert t.passed
    probs = t.tables["joint_probabilities"]
    same, diff = probs["00"] + probs["11"], probs["01"] + probs["10"]
    assert (same, diff) == (pytest.approx(1.0 - x), pytest.approx(float(x)))
    assert t.tables["runs_correct"] == 500
    np.testing.assert_allclose(t.tables["alice_marginal"], 0.5, atol=1e-12)


def test_locc_decode_is_seeded():
    a, b = locc_decode(1, seed=4, runs=50), locc_decode(1, seed=4, runs=50)
    assert a.to_dict() == b.to_dict()
    with pytest.raises(ContractError):
        locc_decode(3)


# ------------------------------------------------------------ secret sharing


def test_rebit_secret_sharing(two_rebit):
    report = secret_sharing_conditions(two_rebit, *omega_pair(), two_rebit.measurements["yy-parity"], rebit_swap_resource())
    assert report.verdict, report.residuals
    assert report.protocol["decodable"]
    np.testing.assert_allclose(report.protocol["alice_marginal"], 0.5, atol=1e-12)


def test_bct_secret_sharing(bct):
    report = secret_sharing_conditions(
        bct, bct_level(0, 0, "+"), bct_level(0, 0, "-"), bct.measurements["sign"], bct_swap_resource()
    )
    assert report.verdict and report.protocol["decodable"]


def test_product_state_fails_condition_i(two_rebit):
    product = boxtimes_state(two_rebit, rebit_state(0.0), rebit_state(0.0))
    report = secret_sharing_conditions(
        two_rebit, omega_pair()[0], product, two_rebit.measurements["yy-parity"], rebit_swap_resource()
    )
    assert not report.conditions["i"] and not report.conditions["ii"]
    assert report.protocol is None and not report.to_dict()["verdict"]


def test_secret_sharing_shape_checks(two_rebit, bct):
    with pytest.raises(ContractError):
        secret_sharing_conditions(two_rebit, *omega_pair(), np.ones((3, 10)), rebit_swap_resource())
    with pytest.raises(ContractError):
        secret_sharing_conditions(two_rebit, *omega_pair(), two_rebit.measurements["yy-parity"], bct_swap_resource())
