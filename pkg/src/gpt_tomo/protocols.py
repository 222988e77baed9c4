"""Simulation and auditing of information-processing protocols.

Bell tables, steering assemblages and teleportation are checked against
the explicit local models that a separable tomographically local part
provides.  Dense coding, data hiding, LOCC decoding and secret sharing are
simulated end to end and report their verdicts.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .entanglement import SeparableDecomposition, classify
from .errors import ContractError, MissingCertificateError
from .linalg import TOL_NUM, convex_membership
from .model import SCHEMA_TAG, CompositeSystem, GptSystem, conditional_effect, conditional_state
from .theories import (
    TWO_REBIT_LABELS,
    bct_cross_matrix,
    bct_level,
    bct_local_reversible,
    cross_product_matrix,
    omega_pair,
    pauli_matrix,
    rebit_effect,
    resolve_theory,
    unitary_map,
)
from .theories.sampling import default_rng
from .tomography import TomographicDecomposition, decompose

# Largest number of deterministic strategies the LHV test enumerates.
MAX_STRATEGIES = 1 << 16


def _decomposition(comp: CompositeSystem, dec: TomographicDecomposition | None) -> TomographicDecomposition:
    return decompose(comp) if dec is None else dec


def _maxabs(x) -> float:
    return float(np.max(np.abs(x), initial=0.0))


# ---------------------------------------------------------------- measurements


def binary_measurement(theta: float) -> np.ndarray:
    """Two-outcome projective rebit measurement along angle ``theta``.

    ``theta = 0`` measures ``sigma_x`` and ``theta = pi/2`` measures
    ``sigma_z``; outcome 0 is the ``+1`` eigenvalue.
    """
    return np.array([rebit_effect(theta), rebit_effect(theta + np.pi)])


def axis_measurement(axis) -> np.ndarray:
    """Two-outcome projective qubit measurement along a Bloch axis."""
    axis = np.asarray(axis, dtype=float)
    axis = axis / np.linalg.norm(axis)
    return 0.5 * np.array([np.concatenate([[1.0], axis]), np.concatenate([[1.0], -axis])])


def default_measurements(system: GptSystem, seed: int | None = None, n_random: int = 8) -> list[np.ndarray]:
    """The standard measurement family for a local system.

    Rebits get ``sigma_x``, ``sigma_z`` and ``n_random`` measurements at
    seeded random angles.  Qubits get the three Pauli measurements and
    random axes.  Classical systems get the fine-grained measurement and
    random two-outcome coarse noisy measurements.
    """
    rng = default_rng(seed)
    labels = tuple(system.metadata.get("pauli_labels", ()))
    if labels == ("I", "X", "Z"):
        thetas = [0.0, np.pi / 2, *rng.uniform(0, 2 * np.pi, n_random)]
        return [binary_measurement(t) for t in thetas]
    if labels == ("I", "X", "Y", "Z"):
        axes = [*np.eye(3), *rng.normal(size=(n_random, 3))]
        return [axis_measurement(a) for a in axes]
    if system.state_cone == "simplex":
        out = [np.eye(system.dim)]
        for _ in range(n_random):
            e = rng.uniform(0, 1, system.dim)
            out.append(np.array([e, 1 - e]))
        return out
    raise ContractError(f"no default measurements for system {system.name!r}")


def _check_measurements(system: GptSystem, measurements, what: str) -> list[np.ndarray]:
    out = []
    for k, m in enumerate(measurements):
        m = np.atleast_2d(np.asarray(m, dtype=float))
        if m.shape[1] != system.dim:
            raise ContractError(f"{what} measurement {k} has effects of dimension {m.shape[1]}, expected {system.dim}")
        if _maxabs(m.sum(axis=0) - system.unit_effect) > TOL_NUM:
            raise ContractError(f"{what} measurement {k} does not sum to the unit effect")
        if np.max(system.effect_violation(m), initial=0.0) > TOL_NUM:
            raise ContractError(f"{what} measurement {k} contains an invalid effect")
        out.append(m)
    if not out:
        raise ContractError(f"no {what} measurements given")
    if len({m.shape[0] for m in out}) != 1:
        raise ContractError(f"{what} measurements must share an outcome count")
    return out


def _pairing_matrix(comp: CompositeSystem, omega) -> np.ndarray:
    """``W`` with ``(e [x] f)(omega) = e . W f``."""
    omega = np.asarray(omega, dtype=float)
    if omega.shape != (comp.joint.dim,):
        raise ContractError("state does not match the joint system")
    return (comp.effect_product.T @ omega).reshape(comp.sys_a.dim, comp.sys_b.dim)


# ------------------------------------------------------------------ Bell tables


@dataclass(frozen=True)
class BellTable:
    """Joint outcome statistics ``p(a, b | x, y)``.

    Attributes
    ----------
    probs : numpy.ndarray, shape (X, Y, A, B)
        ``probs[x, y, a, b] = p(a, b | x, y)``.
    """

    probs: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=float)
        if p.ndim != 4:
            raise ContractError("a Bell table has axes (x, y, a, b)")
        if p.min(initial=0.0) < -TOL_NUM:
            raise ContractError("Bell table has negative entries")
        if _maxabs(p.sum(axis=(2, 3)) - 1) > TOL_NUM:
            raise ContractError("Bell table slices are not normalised")
        pa, pb = p.sum(axis=3), p.sum(axis=2)
        if _maxabs(pa - pa[:, :1]) > TOL_NUM or _maxabs(pb - pb[:1]) > TOL_NUM:
            raise ContractError("Bell table is signalling")
        p = p.copy()
        p.setflags(write=False)
        object.__setattr__(self, "probs", p)

    @property
    def n_inputs_a(self) -> int:
        return self.probs.shape[0]

    @property
    def n_inputs_b(self) -> int:
        return self.probs.shape[1]

    @property
    def n_outputs_a(self) -> int:
        return self.probs.shape[2]

    @property
    def n_outputs_b(self) -> int:
        return self.probs.shape[3]

    def prob(self, a: int, b: int, x: int, y: int) -> float:
        return float(self.probs[x, y, a, b])

    def marginal_a(self) -> np.ndarray:
        """``p(a | x)`` with axes ``(x, a)``."""
        return self.probs[:, 0].sum(axis=2)

    def marginal_b(self) -> np.ndarray:
        """``p(b | y)`` with axes ``(y, b)``."""
        return self.probs[0].sum(axis=1)

    def to_dict(self) -> dict:
        return {
            "n_inputs_a": self.n_inputs_a,
            "n_inputs_b": self.n_inputs_b,
            "n_outputs_a": self.n_outputs_a,
            "n_outputs_b": self.n_outputs_b,
            "probs": self.probs.tolist(),
        }


def bell_table(omega, a_measurements, b_measurements, comp: CompositeSystem) -> BellTable:
    """Statistics of local measurements on a joint state.

    ``p(a, b | x, y) = (e_{a|x} [x] f_{b|y})(omega)``.

    Raises
    ------
    ContractError
        If a measurement does not sum to the local unit or an effect is
        invalid.
    """
    ma = np.stack(_check_measurements(comp.sys_a, a_measurements, "Alice"))
    mb = np.stack(_check_measurements(comp.sys_b, b_measurements, "Bob"))
    w = _pairing_matrix(comp, omega)
    return BellTable(np.einsum("xai,ij,ybj->xyab", ma, w, mb))


def pr_box() -> BellTable:
    """The two-input two-output box with ``a + b = x y`` mod 2."""
    p = np.zeros((2, 2, 2, 2))
    for x, y, a, b in itertools.product(range(2), repeat=4):
        p[x, y, a, b] = 0.5 if (a ^ b) == (x & y) else 0.0
    return BellTable(p)


def deterministic_table(alpha: Sequence[int], beta: Sequence[int], n_outputs_a: int = 2, n_outputs_b: int = 2) -> BellTable:
    """Table of the local strategy ``a = alpha[x]``, ``b = beta[y]``."""
    p = np.zeros((len(alpha), len(beta), n_outputs_a, n_outputs_b))
    for x, a in enumerate(alpha):
        for y, b in enumerate(beta):
            p[x, y, a, b] = 1.0
    return BellTable(p)


@dataclass(frozen=True)
class LhvResult:
    """Outcome of the local-hidden-variable LP.

    Attributes
    ----------
    feasible : bool
    weights : dict
        Maps the strategies ``(alpha, beta)`` in the support to their weight.
    residual : float
    """

    feasible: bool
    weights: dict
    residual: float

    def to_dict(self) -> dict:
        return {
            "feasible": self.feasible,
            "residual": self.residual,
            "weights": [
                {"alpha": list(a), "beta": list(b), "weight": w} for (a, b), w in sorted(self.weights.items())
            ],
        }


def lhv_membership(table: BellTable) -> LhvResult:
    """Whether a table is a mixture of deterministic local strategies.

    The strategies are all pairs of output assignments
    ``alpha: x -> a`` and ``beta: y -> b``.

    Raises
    ------
    ContractError
        If there are more than ``MAX_STRATEGIES`` strategies.
    """
    nx, ny, na, nb = table.probs.shape
    count = na**nx * nb**ny
    if count > MAX_STRATEGIES:
        raise ContractError(f"{count} deterministic strategies exceed the limit of {MAX_STRATEGIES}")
    alphas = list(itertools.product(range(na), repeat=nx))
    betas = list(itertools.product(range(nb), repeat=ny))
    da = np.zeros((len(alphas), nx, na))
    for k, alpha in enumerate(alphas):
        da[k, np.arange(nx), alpha] = 1.0
    db = np.zeros((len(betas), ny, nb))
    for k, beta in enumerate(betas):
        db[k, np.arange(ny), beta] = 1.0
    gens = np.einsum("kxa,lyb->klxyab", da, db).reshape(count, -1)
    res = convex_membership(table.probs.ravel(), gens)
    weights = {}
    if res.feasible:
        for idx in np.flatnonzero(res.weights > 0):
            k, l = divmod(int(idx), len(betas))
            weights[(alphas[k], betas[l])] = float(res.weights[idx])
    return LhvResult(res.feasible, weights, res.residual)


# --------------------------------------------------------------------- steering


@dataclass(frozen=True)
class Assemblage:
    """Conditional states on Bob's side for each of Alice's outcomes.

    Attributes
    ----------
    elements : numpy.ndarray, shape (X, A, dim_B)
        ``elements[x, a]`` is the unnormalised state after outcome ``a`` of
        measurement ``x``.
    measurements : numpy.ndarray, shape (X, A, dim_A)
    unit_b : numpy.ndarray
        Bob's unit effect, used for the normalisation check.
    """

    elements: np.ndarray
    measurements: np.ndarray
    unit_b: np.ndarray

    def __post_init__(self):
        el = np.asarray(self.elements, dtype=float)
        reduced = el.sum(axis=1)
        if _maxabs(reduced - reduced[:1]) > TOL_NUM:
            raise ContractError("assemblage is signalling")
        if _maxabs(el.sum(axis=1) @ self.unit_b - 1) > TOL_NUM:
            raise ContractError("assemblage is not normalised")

    def element(self, a: int, x: int) -> np.ndarray:
        return self.elements[x, a]

    def to_dict(self) -> dict:
        return {"elements": self.elements.tolist()}


def steering_assemblage(omega, a_measurements, comp: CompositeSystem) -> Assemblage:
    """Bob's conditional states for each of Alice's measurement outcomes.

    Raises
    ------
    SteeringClosureError
        If Bob's conditional states are not determined locally.
    """
    ma = np.stack(_check_measurements(comp.sys_a, a_measurements, "Alice"))
    elements = np.array([[conditional_state(comp, omega, e, keep="b") for e in m] for m in ma])
    return Assemblage(elements, ma, comp.sys_b.unit_effect)


def _certificate(comp: CompositeSystem, omega, dec) -> SeparableDecomposition:
    report = classify(comp, omega, dec)
    if report.certificate is None:
        raise MissingCertificateError(
            "the state's product component is not separable, so no explicit local model exists"
        )
    return report.certificate


@dataclass(frozen=True)
class LhsVerdict:
    """Explicit local-hidden-state model of an assemblage.

    The model reproduces ``element(a, x) = sum_i p_i e_{a|x}(w_i) v_i``
    where ``Pi_TL(omega) = sum_i p_i w_i [x] v_i``.

    Attributes
    ----------
    passed : bool
    residual : float
        Max-norm deviation between the assemblage and the model.
    model : SeparableDecomposition
    """

    passed: bool
    residual: float
    model: SeparableDecomposition

    def to_dict(self) -> dict:
        return {"passed": self.passed, "residual": self.residual, "model": self.model.to_dict()}


def lhs_check(asm: Assemblage, omega, comp: CompositeSystem, dec: TomographicDecomposition | None = None) -> LhsVerdict:
    """Verify the local-hidden-state model built from the separable product part.

    Raises
    ------
    MissingCertificateError
        If ``Pi_TL(omega)`` is not separable.
    """
    cert = _certificate(comp, omega, _decomposition(comp, dec))
    # responses[x, a, i] = e_{a|x}(w_i)
    responses = np.einsum("xai,ki->xak", asm.measurements, cert.states_a)
    model = np.einsum("xak,k,kj->xaj", responses, cert.weights, cert.states_b)
    residual = _maxabs(model - asm.elements)
    return LhsVerdict(residual <= TOL_NUM, residual, cert)


# ---------------------------------------------------------------- teleportation


@dataclass(frozen=True)
class TeleportageVerdict:
    """Outcome of the teleportation usefulness check.

    Attributes
    ----------
    passed : bool
        The holistic contribution vanishes and the local model matches.
    holistic_norm : float
        Largest max-norm of the holistic contribution over effects and inputs.
    model_deviation : float
        Largest deviation between Bob's vector and the local model.
    b_vectors : numpy.ndarray, shape (n_effects, n_inputs, dim_B)
    """

    passed: bool
    holistic_norm: float
    model_deviation: float
    b_vectors: np.ndarray = field(repr=False)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "holistic_norm": self.holistic_norm,
            "model_deviation": self.model_deviation,
            "b_vectors": self.b_vectors.tolist(),
        }


def teleportage_constancy(
    omega,
    e_a,
    inputs,
    comp: CompositeSystem,
    comp_sa: CompositeSystem | None = None,
    dec: TomographicDecomposition | None = None,
) -> TeleportageVerdict:
    """Check that a resource without TL entanglement cannot teleport.

    Alice holds the input system ``S`` and ``A``; ``comp_sa`` composes them
    (default ``comp``) and ``comp`` composes ``A`` with Bob's ``B``.  For each
    joint effect on ``S A`` and each input ``psi``, Alice's effective effect
    on ``A`` is ``e_eff = e_a(psi [x] .)``.  Bob's vector is compared with
    ``sum_i p_i e_eff(w_i) v_i`` and the part due to ``Pi_TNL(omega)``
    must vanish.

    Raises
    ------
    MissingCertificateError
        If ``omega`` has TL entanglement.
    """
    comp_sa = comp if comp_sa is None else comp_sa
    if comp_sa.sys_b.dim != comp.sys_a.dim:
        raise ContractError("Alice's second system must be the first factor of the resource composite")
    dec = _decomposition(comp, dec)
    cert = _certificate(comp, omega, dec)
    tnl = dec.tnl_part(omega)
    effects = np.atleast_2d(np.asarray(e_a, dtype=float))
    inputs = np.atleast_2d(np.asarray(inputs, dtype=float))
    b_vectors = np.zeros((len(effects), len(inputs), comp.sys_b.dim))
    holistic = deviation = 0.0
    for k, e in enumerate(effects):
        for n, psi in enumerate(inputs):
            e_eff = conditional_effect(comp_sa, e, psi, keep="b")
            b_vectors[k, n] = conditional_state(comp, omega, e_eff, keep="b")
            hol = conditional_state(comp, tnl, e_eff, keep="b")
            model = (cert.weights * (cert.states_a @ e_eff)) @ cert.states_b
            holistic = max(holistic, _maxabs(hol))
            deviation = max(deviation, _maxabs(b_vectors[k, n] - model))
    return TeleportageVerdict(holistic <= TOL_NUM and deviation <= TOL_NUM, holistic, deviation, b_vectors)


# ------------------------------------------------------------------ transcripts


@dataclass(frozen=True)
class ProtocolTranscript:
    """Record of a protocol run.

    Attributes
    ----------
    protocol : str
    seed : int or None
    inputs, intermediates, tables : dict
    verdicts : dict
        Named boolean outcomes; the run passes when all are true.
    """

    protocol: str
    seed: int | None
    inputs: dict
    intermediates: dict
    tables: dict
    verdicts: dict

    @property
    def passed(self) -> bool:
        return all(bool(v) for v in self.verdicts.values())

    def to_dict(self) -> dict:
        from ._json import jsonable

        return {
            "schema": SCHEMA_TAG,
            "protocol": self.protocol,
            "seed": self.seed,
            "inputs": jsonable(self.inputs),
            "intermediates": jsonable(self.intermediates),
            "tables": jsonable(self.tables),
            "verdicts": {k: bool(v) for k, v in self.verdicts.items()},
            "passed": self.passed,
        }


# ------------------------------------------------------------------ dense coding


def _level_label(index: int) -> tuple[int, int, int]:
    pair, s = divmod(index, 2)
    i, j = divmod(pair, 2)
    return i, j, s


def dense_code_bct(message: Sequence[int], seed: int | None = None) -> ProtocolTranscript:
    """Send two bits through one bilocal-classical bit.

    The pair starts in ``|(00)-)``.  Alice flips her bit with ``x`` and the
    hidden sign with ``y``, sends her bit to Bob, and Bob reads all eight
    levels.  A second decoder that only uses product effects
    (``Pi_TL^T`` of the level indicators) is run for comparison.
    """
    x, y = (int(v) for v in message)
    if x not in (0, 1) or y not in (0, 1):
        raise ContractError(f"message must be two bits, got {tuple(message)!r}")
    comp = resolve_theory("bct")
    dec = decompose(comp)
    start = bct_level(0, 0, "-")
    encoded = bct_local_reversible(x, y, side="a") @ start
    levels = comp.measurements["levels"]
    probs = levels @ encoded
    product_probs = (levels @ dec.pi_tl) @ encoded

    def decode(index):
        i, _, s = _level_label(index)
        return i, 1 if s == 0 else 0  # starting from "-", a sign flip lands on "+"

    decoded = [decode(k) for k in range(8)]
    success = sum(p for p, d in zip(probs, decoded) if d == (x, y))
    product_success = sum(p for p, d in zip(product_probs, decoded) if d == (x, y))
    product_y = sum(p for p, d in zip(product_probs, decoded) if d[1] == y)
    product_x = sum(p for p, d in zip(product_probs, decoded) if d[0] == x)
    best = int(np.argmax(probs))
    return ProtocolTranscript(
        protocol="densecode",
        seed=seed,
        inputs={"message": [x, y], "initial_state": start},
        intermediates={"encoded_state": encoded, "encoding_map": bct_local_reversible(x, y, side="a")},
        tables={
            "level_probabilities": probs,
            "product_only_probabilities": product_probs,
            "decoded": list(decoded[best]),
            "success_probability": float(success),
            "product_only_success": float(product_success),
            "product_only_x_success": float(product_x),
            "product_only_y_success": float(product_y),
        },
        verdicts={
            "decoded_correctly": decoded[best] == (x, y),
            "certain": abs(success - 1) <= 1e-12,
        },
    )


# ------------------------------------------------------------------ data hiding


@dataclass(frozen=True)
class HidingAudit:
    """Data-hiding properties of a pair of joint states.

    Attributes
    ----------
    local_indistinguishable : bool
        ``Pi_TL(omega0) = Pi_TL(omega1)``.
    globally_discriminable : bool
        Some two-outcome joint measurement tells the states apart perfectly.
    tl_free : bool
        Neither state has TL entanglement.
    worst_local_gap : float
        Largest ``|(e [x] f)(omega0 - omega1)|`` over effect-generator pairs.
    discrimination_error : float
        Smallest ``max |e_i(omega_x) - delta_ix|`` over the candidate measurements.
    measurement : str or None
        Name of the best discriminating measurement.
    """

    local_indistinguishable: bool
    globally_discriminable: bool
    tl_free: bool
    worst_local_gap: float
    discrimination_error: float
    measurement: str | None

    @property
    def verdict(self) -> str:
        if self.local_indistinguishable and self.globally_discriminable and self.tl_free:
            return "perfectly secure"
        return "insecure"

    def to_dict(self) -> dict:
        return {
            "local_indistinguishable": self.local_indistinguishable,
            "globally_discriminable": self.globally_discriminable,
            "tl_free": self.tl_free,
            "worst_local_gap": self.worst_local_gap,
            "discrimination_error": self.discrimination_error,
            "measurement": self.measurement,
            "verdict": self.verdict,
        }


def _two_outcome_measurements(comp: CompositeSystem, measurement) -> dict[str, np.ndarray]:
    if measurement is not None:
        return {"given": np.atleast_2d(np.asarray(measurement, dtype=float))}
    return {k: np.asarray(m) for k, m in comp.measurements.items() if np.asarray(m).shape[0] == 2}


def data_hiding_audit(
    omega0,
    omega1,
    comp: CompositeSystem,
    dec: TomographicDecomposition | None = None,
    measurement=None,
) -> HidingAudit:
    """Audit a pair of joint states as a data-hiding scheme.

    Parameters
    ----------
    omega0, omega1 : array_like
        Normalised joint states.
    measurement : array_like, optional
        Two joint effects to test for discrimination; by default every
        registered two-outcome measurement of the composite is tried.
    """
    dec = _decomposition(comp, dec)
    omega0, omega1 = np.asarray(omega0, dtype=float), np.asarray(omega1, dtype=float)
    diff = omega0 - omega1
    local_ok = _maxabs(dec.tl_part(diff)) <= TOL_NUM
    w = _pairing_matrix(comp, diff)
    gap = _maxabs(comp.sys_a.effect_generators @ w @ comp.sys_b.effect_generators.T)
    best_name, best_err = None, np.inf
    for name, m in _two_outcome_measurements(comp, measurement).items():
        if m.shape != (2, comp.joint.dim):
            continue
        err = _maxabs(m @ np.column_stack([omega0, omega1]) - np.eye(2))
        if err < best_err:
            best_name, best_err = name, err
    tl_free = not classify(comp, omega0, dec).has_tl and not classify(comp, omega1, dec).has_tl
    return HidingAudit(
        local_indistinguishable=bool(local_ok),
        globally_discriminable=bool(best_err <= TOL_NUM),
        tl_free=bool(tl_free),
        worst_local_gap=gap,
        discrimination_error=float(best_err),
        measurement=best_name,
    )


# ------------------------------------------------------------- LOCC decoding


def local_encode_rebit(x: int) -> np.ndarray:
    """Alice's encoding ``omega_x = (Z^A)^x (omega+)`` with ``Z = sigma_z . sigma_z``.

    Conjugation by ``sigma_z`` on Alice's rebit flips every coordinate with
    a ``sigma_x`` or ``sigma_y`` on her side.
    """
    if x not in (0, 1):
        raise ContractError(f"x must be a bit, got {x!r}")
    plus, _ = omega_pair()
    if x == 0:
        return plus
    return unitary_map(np.kron(pauli_matrix("Z"), pauli_matrix("I")), TWO_REBIT_LABELS) @ plus


@dataclass(frozen=True)
class SwapResource:
    """Doubled composite used to test remote implementation of the swap.

    Attributes
    ----------
    doubled : CompositeSystem
        The bipartition ``AA' | BB'``; each local system is a copy of the
        joint system ``AB``.
    cross : numpy.ndarray
        Sends ``kron(w_AB, v_A'B')`` to a state of the doubled composite.
    resource : numpy.ndarray
        The shared state on ``A'B'``.
    """

    doubled: CompositeSystem
    cross: np.ndarray
    resource: np.ndarray

    def embed(self, omega) -> np.ndarray:
        return self.cross @ np.kron(np.asarray(omega, dtype=float), self.resource)


def rebit_swap_resource() -> SwapResource:
    """Four rebits with ``omega+`` shared on ``A'B'``."""
    plus, _ = omega_pair()
    return SwapResource(resolve_theory("rebit-quad"), cross_product_matrix(), plus)


def bct_swap_resource() -> SwapResource:
    """Two bilocal-classical pairs with ``|(00)+)`` shared on ``A'B'``."""
    return SwapResource(resolve_theory("bct-quad"), bct_cross_matrix(), bct_level(0, 0, "+"))


@dataclass(frozen=True)
class SecretSharingReport:
    """Conditions for secret sharing through a TNL-only state pair.

    Attributes
    ----------
    conditions : dict
        Booleans ``i`` (both states TNL-only), ``ii`` (indistinguishable by
        product effects), ``iii`` (perfectly discriminable) and ``iv``
        (Alice's measurement on ``AA'`` leaves ``p(0) w_x`` and
        ``p(1) w_{1-x}`` on ``BB'``).
    residuals : dict
        The numerical deviations underlying each condition.
    protocol : dict or None
        ``p(a, b | x)`` tables and decoding probabilities, present when all
        conditions hold.
    """

    conditions: dict
    residuals: dict
    protocol: dict | None

    @property
    def verdict(self) -> bool:
        return all(self.conditions.values())

    def to_dict(self) -> dict:
        from ._json import jsonable

        return {
            "conditions": dict(self.conditions),
            "residuals": jsonable(self.residuals),
            "protocol": jsonable(self.protocol),
            "verdict": self.verdict,
        }


def _share_tables(comp, states, joint_measurement, swap: SwapResource):
    """``p[x, a, b]`` and Bob's conditional vectors ``sigma[x, a]``."""
    sigma = np.array([
        [conditional_state(swap.doubled, swap.embed(w), e, keep="b") for e in joint_measurement]
        for w in states
    ])
    p = np.einsum("xai,bi->xab", sigma, joint_measurement)
    return p, sigma


def secret_sharing_conditions(
    comp: CompositeSystem,
    omega0,
    omega1,
    joint_measurement,
    swap_resource: SwapResource,
    dec: TomographicDecomposition | None = None,
) -> SecretSharingReport:
    """Evaluate the four secret-sharing conditions and run the protocol.

    When all conditions hold, the dealer's bit ``x`` is shared as
    ``x = a + b`` mod 2 with ``a`` and ``b`` the outcomes of
    ``joint_measurement`` on ``AA'`` and ``BB'``.
    """
    dec = _decomposition(comp, dec)
    states = np.array([omega0, omega1], dtype=float)
    meas = np.atleast_2d(np.asarray(joint_measurement, dtype=float))
    if meas.shape != (2, comp.joint.dim):
        raise ContractError("the joint measurement must have two effects on the joint system")
    if swap_resource.doubled.sys_a.dim != comp.joint.dim or swap_resource.doubled.sys_b.dim != comp.joint.dim:
        raise ContractError("the doubled composite must have copies of the joint system as its parts")
    reports = [classify(comp, w, dec) for w in states]
    cond_i = all(r.has_tnl and not r.has_tl for r in reports)
    gap_ii = _maxabs(dec.tl_part(states[0] - states[1]))
    err_iii = _maxabs(meas @ states.T - np.eye(2))
    p, sigma = _share_tables(comp, states, meas, swap_resource)
    err_iv = 0.0
    for x in (0, 1):
        pa = sigma[x] @ comp.joint.unit_effect
        err_iv = max(err_iv, _maxabs(sigma[x, 0] - pa[0] * states[x]), _maxabs(sigma[x, 1] - pa[1] * states[1 - x]))
    conditions = {
        "i": bool(cond_i),
        "ii": bool(gap_ii <= TOL_NUM),
        "iii": bool(err_iii <= TOL_NUM),
        "iv": bool(err_iv <= TOL_NUM),
    }
    residuals = {
        "i": [{"has_tl": r.has_tl, "has_tnl": r.has_tnl} for r in reports],
        "ii": gap_ii,
        "iii": err_iii,
        "iv": err_iv,
    }
    protocol = None
    if all(conditions.values()):
        correct = [float(sum(p[x, a, b] for a in (0, 1) for b in (0, 1) if a ^ b == x)) for x in (0, 1)]
        protocol = {
            "joint_probabilities": p,
            "alice_marginal": p.sum(axis=2),
            "success_probability": correct,
            "decodable": all(abs(c - 1) <= TOL_NUM for c in correct),
        }
    return SecretSharingReport(conditions, residuals, protocol)


def locc_decode(x: int, seed: int | None = None, runs: int = 1000) -> ProtocolTranscript:
    """Recover a bit hidden in ``omega_x`` using a shared ``omega+`` and one message.

    Alice measures ``{e0, e1}`` on ``AA'`` and announces ``a``; Bob measures
    the same pair on ``BB'`` and outputs ``a + b`` mod 2.  The outcome pairs
    of ``runs`` seeded rounds are sampled from the exact distribution.
    """
    if x not in (0, 1):
        raise ContractError(f"x must be a bit, got {x!r}")
    comp = resolve_theory("two-rebit")
    meas = comp.measurements["yy-parity"]
    swap = rebit_swap_resource()
    omega_x = local_encode_rebit(x)
    joint = swap.embed(omega_x)
    sigma = np.array([conditional_state(swap.doubled, joint, e, keep="b") for e in meas])
    p = sigma @ meas.T
    rng = default_rng(seed)
    flat = np.clip(p.ravel(), 0.0, None)
    draws = rng.choice(4, size=runs, p=flat / flat.sum())
    a, b = np.divmod(draws, 2)
    decoded = a ^ b
    expected = [
        0.5 * w for w in (omega_pair()[0], omega_pair()[1])
    ]
    sigma_target = [expected[x], expected[1 - x]]
    sigma_err = max(_maxabs(sigma[k] - sigma_target[k]) for k in (0, 1))
    correct = float(sum(p[i, j] for i in (0, 1) for j in (0, 1) if i ^ j == x))
    marginal = p.sum(axis=1)
    return ProtocolTranscript(
        protocol="locc-decode",
        seed=seed,
        inputs={"bit": x, "runs": runs, "hidden_state": omega_x, "resource_state": swap.resource},
        intermediates={"bob_conditional_states": sigma},
        tables={
            "joint_probabilities": {f"{i}{j}": float(p[i, j]) for i in (0, 1) for j in (0, 1)},
            "alice_marginal": marginal,
            "decoded": int(np.bincount(decoded, minlength=2).argmax()),
            "success_probability": correct,
            "runs_correct": int(np.sum(decoded == x)),
        },
        verdicts={
            "conditional_states_match": sigma_err <= TOL_NUM,
            "decodes_with_certainty": abs(correct - 1) <= TOL_NUM,
            "all_runs_correct": bool(np.all(decoded == x)),
            "alice_marginal_uniform": _maxabs(marginal - 0.5) <= TOL_NUM,
        },
    )


__all__ = [
    "MAX_STRATEGIES",
    "Assemblage",
    "BellTable",
    "HidingAudit",
    "LhsVerdict",
    "LhvResult",
    "ProtocolTranscript",
    "SecretSharingReport",
    "SwapResource",
    "TeleportageVerdict",
    "bct_swap_resource",
    "bell_table",
    "axis_measurement",
    "binary_measurement",
    "data_hiding_audit",
    "default_measurements",
    "dense_code_bct",
    "deterministic_table",
    "lhs_check",
    "lhv_membership",
    "local_encode_rebit",
    "locc_decode",
    "pr_box",
    "rebit_swap_resource",
    "secret_sharing_conditions",
    "steering_assemblage",
    "teleportage_constancy",
]
