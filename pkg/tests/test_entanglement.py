import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gpt_tomo.entanglement import (
    ROUTE_METHODS,
    EntanglementReport,
    ball_certificate,
    classify,
    concurrence_certificate,
    has_tl_entanglement,
    has_tnl_entanglement,
    is_separable_effect,
    is_separable_state,
    tnl_component_norm,
    zero_concurrence_products,
)
from gpt_tomo.errors import ContractError, UnsupportedTheoryError
from gpt_tomo.model import boxtimes_state, product_states
from gpt_tomo.theories import (
    bct_level,
    iota_coords,
    iota_embed,
    named_states,
    ppt_separable_2x2,
    rebit_state,
    resolve_theory,
)
from gpt_tomo.theories.sampling import (
    random_complex_state,
    random_real_state,
    random_separable,
    random_tnl_only,
    yy_range,
)
from gpt_tomo.tomography import decompose

from oracles import linprog_convex, rho_two_rebit


def _reconstructs(comp, omega, cert, tol=1e-8):
    assert cert is not None
    assert np.all(cert.weights >= 0)
    for w in cert.states_a:
        assert comp.sys_a.is_state(w, normalized=True)
    for v in cert.states_b:
        assert comp.sys_b.is_state(v, normalized=True)
    np.testing.assert_allclose(cert.vector(comp), omega, atol=tol)


# ---------------------------------------------------------------- two rebits


def test_classify_named_two_rebit(two_rebit):
    states = named_states("two-rebit")
    expect = {
        "omega-plus": {"TNL"},
        "omega-minus": {"TNL"},
        "phi-plus": {"TL", "TNL"},
        "phi-minus": {"TL", "TNL"},
        "psi-plus": {"TL", "TNL"},
        "psi-minus": {"TL", "TNL"},
        "mixed": set(),
        "product-00": set(),
    }
    for name, kinds in expect.items():
        report = classify(two_rebit, states[name])
        assert report.kinds == kinds, name
        assert report.separable == (not kinds)
        assert report.method == "ppt-embed"


def test_omega_report_details(two_rebit):
    report = classify(two_rebit, named_states("two-rebit")["omega-plus"])
    assert report.tnl_component_norm == pytest.approx(0.25)
    _reconstructs(two_rebit, report.tl_part, report.certificate)
    d = report.to_dict()
    assert d["kinds"] == ["TNL"] and d["certificate"] is not None


def test_bell_has_no_certificate(two_rebit):
    report = classify(two_rebit, named_states("two-rebit")["phi-plus"])
    assert report.certificate is None
    assert report.tnl_component_norm == pytest.approx(0.25)


def test_classify_rejects_non_states(two_rebit):
    with pytest.raises(ContractError):
        classify(two_rebit, np.array([1.0, 2.0, 0, 0, 0, 0, 0, 0, 0, 0]))
    with pytest.raises(ContractError):
        classify(two_rebit, np.ones(3))


def test_report_invariants_enforced():
    z = np.zeros(1)
    with pytest.raises(ContractError):
        EntanglementReport(True, True, False, 0.0, None, "lp", z, z)
    with pytest.raises(ContractError):
        EntanglementReport(False, False, False, 0.0, None, "lp", z, z)


def test_zero_vector_is_separable(two_rebit):
    ok, cert = is_separable_state(two_rebit, np.zeros(10), certificate=True)
    assert ok and len(cert.weights) == 0


@given(st.integers(0, 10_000))
def test_random_separable_states_are_certified(seed):
    comp = resolve_theory("two-rebit")
    omega, *_ = random_separable(comp, np.random.default_rng(seed))
    ok, cert = is_separable_state(comp, omega, certificate=True)
    assert ok
    _reconstructs(comp, omega, cert)


@given(st.integers(0, 10_000))
def test_random_tnl_only_states(seed):
    comp = resolve_theory("two-rebit")
    omega, tl = random_tnl_only(comp, np.random.default_rng(seed))
    report = classify(comp, omega)
    assert report.kinds == {"TNL"}
    np.testing.assert_allclose(report.tl_part, tl, atol=1e-12)
    _reconstructs(comp, report.tl_part, report.certificate)


@given(st.integers(0, 10_000))
def test_real_states_with_zero_yy_are_separable(seed):
    # Transposing Bob leaves a real state with no YY part unchanged, so it is PPT.
    comp = resolve_theory("two-rebit")
    omega = random_real_state(np.random.default_rng(seed))
    low, high = yy_range(omega)
    omega = omega.copy()
    omega[-1] += np.clip(-omega[-1], low, high)
    if abs(omega[-1]) > 1e-12:
        return
    assert ppt_separable_2x2(iota_embed(omega))
    _reconstructs(comp, omega, ball_certificate(comp, omega))


def test_yy_range_brackets_positivity(two_rebit, rng):
    omega = random_real_state(rng)
    low, high = yy_range(omega)
    assert low <= 0 <= high
    for t, ok in ((low + 1e-6, True), (high - 1e-6, True), (high + 1e-3, False), (low - 1e-3, False)):
        shifted = omega.copy()
        shifted[-1] += t
        assert two_rebit.joint.is_state(shifted) == ok
        assert (np.linalg.eigvalsh(rho_two_rebit(shifted)).min() >= -1e-9) == ok


def test_ball_certificate_refuses_entangled(two_rebit):
    assert ball_certificate(two_rebit, named_states("two-rebit")["phi-plus"]) is None
    assert ball_certificate(two_rebit, named_states("two-rebit")["omega-plus"]) is None


def test_helpers_agree_with_classify(two_rebit):
    dec = decompose(two_rebit)
    for name, omega in named_states("two-rebit").items():
        report = classify(two_rebit, omega, dec)
        assert has_tl_entanglement(two_rebit, omega, dec) == report.has_tl
        assert has_tnl_entanglement(two_rebit, omega, dec) == report.has_tnl


def test_separable_effects(two_rebit):
    parity = two_rebit.measurements["yy-parity"][0]
    assert not is_separable_effect(two_rebit, parity)
    product = 0.25 * boxtimes_state(two_rebit, rebit_state(0.3), rebit_state(1.1))
    assert is_separable_effect(two_rebit, product)
    assert is_separable_effect(two_rebit, np.zeros(10))


@given(st.floats(0, 2 * np.pi), st.floats(0, 2 * np.pi), st.floats(0, 1), st.floats(0, 1))
def test_pure_and_mixed_products_are_certified(t1, t2, r1, r2):
    # Extreme points are found exactly, where column generation would stall.
    comp = resolve_theory("two-rebit")
    omega = boxtimes_state(comp, rebit_state(t1, r1), rebit_state(t2, r2))
    _reconstructs(comp, omega, concurrence_certificate(comp, omega))
    assert classify(comp, omega).certificate is not None


@given(st.integers(0, 10_000), st.integers(1, 4))
def test_zero_concurrence_products_match_ppt(seed, rank):
    comp = resolve_theory("qubit-pair")
    from gpt_tomo.theories import to_operator

    omega = random_complex_state(np.random.default_rng(seed), rank=rank)
    rho = to_operator(omega, tuple(comp.joint.metadata["pauli_labels"]))
    terms = zero_concurrence_products(rho)
    assert (terms is not None) == ppt_separable_2x2(rho)
    if terms is not None:
        assert len(terms) <= 4
        rebuilt = sum(p * np.outer(np.kron(a, b), np.kron(a, b).conj()) for p, a, b in terms)
        np.testing.assert_allclose(rebuilt, rho, atol=1e-9)


def test_column_generation_fallback(two_rebit):
    omega, *_ = random_separable(two_rebit, np.random.default_rng(3), noise=0.3)
    _reconstructs(two_rebit, omega, ball_certificate(two_rebit, omega))
    assert concurrence_certificate(two_rebit, named_states("two-rebit")["omega-plus"]) is None


# ----------------------------------------------------------------- two qubits


def test_qubit_pair_classification(qubit_pair):
    states = named_states("qubit-pair")
    for name in ("phi-plus", "psi-minus"):
        assert classify(qubit_pair, states[name]).kinds == {"TL"}
    for name in ("omega-plus", "omega-minus", "mixed", "product-00"):
        report = classify(qubit_pair, states[name])
        assert report.separable and report.method == "cone-predicate"
        _reconstructs(qubit_pair, states[name], report.certificate)


def test_embedded_omega_has_two_term_decomposition(qubit_pair):
    report = classify(qubit_pair, iota_coords(named_states("two-rebit")["omega-plus"]))
    assert report.separable
    assert len(report.certificate.weights) <= 4


@pytest.mark.parametrize("seed", range(5))
def test_random_complex_states_match_ppt(qubit_pair, seed):
    omega = random_complex_state(np.random.default_rng(seed), rank=2)
    report = classify(qubit_pair, omega)
    from gpt_tomo.theories import to_operator

    rho = to_operator(omega, tuple(qubit_pair.joint.metadata["pauli_labels"]))
    assert report.separable == ppt_separable_2x2(rho)


def test_qubit_separable_effect(qubit_pair):
    bell = qubit_pair.measurements["bell"][0]
    assert not is_separable_effect(qubit_pair, bell)
    assert is_separable_effect(qubit_pair, np.eye(16)[0])


# ------------------------------------------------------------------ polytopes


def test_bct_classification(bct):
    states = named_states("bct")
    for i in (0, 1):
        for j in (0, 1):
            for s in "+-":
                report = classify(bct, states[f"{i}{j}{s}"])
                assert report.kinds == {"TNL"} and report.method == "lp"
                _reconstructs(bct, report.tl_part, report.certificate)
    for name in ("product-00", "mixed"):
        assert classify(bct, states[name]).separable


@given(st.integers(0, 10_000))
def test_bct_lp_agrees_with_highs(seed):
    comp = resolve_theory("bct")
    dec = decompose(comp)
    omega = np.random.default_rng(seed).dirichlet(np.full(8, 0.5))
    gens = product_states(comp, comp.sys_a.state_generators, comp.sys_b.state_generators)
    expected = linprog_convex(omega, gens)
    assert is_separable_state(comp, omega) == expected
    # Every BCT product part is separable, so only the holistic part can entangle.
    assert classify(comp, omega, dec).has_tl is False


def test_classical_correlated_state_is_separable():
    comp = resolve_theory("classical:3")
    report = classify(comp, named_states("classical:3")["correlated"])
    assert report.separable and not report.has_tnl
    np.testing.assert_allclose(report.certificate.weights, np.full(3, 1 / 3))


def test_bct_effects():
    comp = resolve_theory("bct")
    assert not is_separable_effect(comp, comp.measurements["sign"][0])
    assert is_separable_effect(comp, np.ones(8))


def test_tnl_norm_conventions(bct, two_rebit):
    w = bct_level(0, 0, "+")
    assert tnl_component_norm(bct, decompose(bct).tnl_part(w)) == pytest.approx(0.5)
    yy = np.zeros(10)
    yy[-1] = 1.0
    assert tnl_component_norm(two_rebit, yy) == pytest.approx(1.0 / 4)


def test_unknown_route():
    comp = resolve_theory("rebit-quad")
    with pytest.raises(UnsupportedTheoryError):
        is_separable_state(comp, np.eye(136)[0])
    assert set(ROUTE_METHODS) == {"lp", "rebit-ppt", "qubit-ppt"}
