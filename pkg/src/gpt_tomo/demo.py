"""Protocol demonstrations that produce JSON transcripts."""

from __future__ import annotations

from typing import Callable

import numpy as np

from .entanglement import classify
from .errors import ContractError, UnsupportedTheoryError
from .model import CompositeSystem
from .protocols import (
    ProtocolTranscript,
    axis_measurement,
    bct_swap_resource,
    bell_table,
    binary_measurement,
    data_hiding_audit,
    default_measurements,
    dense_code_bct,
    lhs_check,
    lhv_membership,
    local_encode_rebit,
    locc_decode,
    rebit_swap_resource,
    secret_sharing_conditions,
    steering_assemblage,
    teleportage_constancy,
)
from .theories import bct_level, named_states, rebit_state, resolve_theory
from .theories.sampling import default_rng
from .tomography import decompose

DEMO_NAMES = ("bell", "steering", "teleport", "densecode", "datahide", "locc-decode", "secret-share")


def _composite(theory: str) -> CompositeSystem:
    comp = resolve_theory(theory)
    if not isinstance(comp, CompositeSystem):
        raise UnsupportedTheoryError(f"{theory!r} is a single system, the demo needs a composite")
    return comp


def chsh_measurements(comp: CompositeSystem):
    """Measurement pairs for the CHSH scenario, or ``None`` for classical parts."""
    labels = tuple(comp.sys_a.metadata.get("pauli_labels", ()))
    if labels == ("I", "X", "Z"):
        meas = binary_measurement
    elif labels == ("I", "X", "Y", "Z"):
        def meas(t):
            return axis_measurement([np.cos(t), 0.0, np.sin(t)])
    else:
        return None
    return [meas(0.0), meas(np.pi / 2)], [meas(np.pi / 4), meas(-np.pi / 4)]


def _scenarios(comp: CompositeSystem, seed):
    ma = default_measurements(comp.sys_a, seed)
    mb = default_measurements(comp.sys_b, None if seed is None else seed + 1)
    out = {"axes": (ma[:2], mb[:2]), "random": (ma[2:5], mb[5:8])}
    chsh = chsh_measurements(comp)
    if chsh is not None:
        out["chsh"] = chsh
    return out


def demo_bell(theory, state_name, omega, seed, **_):
    comp = _composite(theory)
    report = classify(comp, omega)
    tables, feasible = {}, {}
    for name, (ma, mb) in _scenarios(comp, seed).items():
        t = bell_table(omega, ma, mb, comp)
        tl_t = bell_table(report.tl_part, ma, mb, comp)
        res = lhv_membership(t)
        tables[name] = {"probs": t.probs, "lhv_feasible": res.feasible, "lhv_weights": res.to_dict()["weights"]}
        feasible[name] = res.feasible
        if np.max(np.abs(t.probs - tl_t.probs)) > 1e-9:
            raise ContractError("holistic part changed local statistics")
    return ProtocolTranscript(
        protocol="bell",
        seed=seed,
        inputs={"theory": theory, "state": state_name, "omega": omega},
        intermediates={"has_tl": report.has_tl, "has_tnl": report.has_tnl, "tl_part": report.tl_part},
        tables=tables,
        verdicts={
            "holistic_part_invisible": True,
            "local_model_when_tl_free": report.has_tl or all(feasible.values()),
        },
    )


def demo_steering(theory, state_name, omega, seed, **_):
    comp = _composite(theory)
    report = classify(comp, omega)
    meas = default_measurements(comp.sys_a, seed)
    asm = steering_assemblage(omega, meas, comp)
    lhs = lhs_check(asm, omega, comp) if report.certificate is not None else None
    return ProtocolTranscript(
        protocol="steering",
        seed=seed,
        inputs={"theory": theory, "state": state_name, "omega": omega, "measurements": meas},
        intermediates={"has_tl": report.has_tl, "has_tnl": report.has_tnl},
        tables={"assemblage": asm.elements, "lhs_model": None if lhs is None else lhs.to_dict()},
        verdicts={"lhs_model_when_tl_free": report.has_tl or (lhs is not None and lhs.passed)},
    )


def demo_teleport(theory, state_name, omega, seed, **_):
    if theory != "two-rebit":
        raise UnsupportedTheoryError("the teleportation demo uses rebits")
    comp = _composite(theory)
    rng = default_rng(seed)
    thetas = [np.pi / 2, 0.0, *rng.uniform(0, 2 * np.pi, 8)]
    inputs = np.array([rebit_state(t) for t in thetas])
    bell = comp.measurements["bell"]
    verdict = teleportage_constancy(omega, bell, inputs, comp)
    return ProtocolTranscript(
        protocol="teleport",
        seed=seed,
        inputs={"theory": theory, "state": state_name, "omega": omega, "inputs": inputs, "joint_effects": bell},
        intermediates={"b_vectors": verdict.b_vectors},
        tables={"holistic_norm": verdict.holistic_norm, "model_deviation": verdict.model_deviation},
        verdicts={"holistic_term_vanishes": verdict.holistic_norm <= 1e-9, "local_model_matches": verdict.passed},
    )


def demo_densecode(seed, message=(0, 0), **_):
    return dense_code_bct(message, seed=seed)


def demo_datahide(theory, seed, bit=None, **_):
    if theory == "two-rebit":
        comp = _composite(theory)
        states = [local_encode_rebit(0), local_encode_rebit(1)]
    elif theory == "bct":
        comp = _composite(theory)
        states = [bct_level(0, 0, "+"), bct_level(0, 0, "-")]
    else:
        raise UnsupportedTheoryError("the data-hiding demo supports two-rebit and bct")
    audit = data_hiding_audit(states[0], states[1], comp)
    inputs = {"theory": theory, "omega0": states[0], "omega1": states[1]}
    tables = {"audit": audit.to_dict()}
    if bit is not None:
        dec = decompose(comp)
        inputs["bit"] = bit
        tables["tl_part_of_hidden_state"] = dec.tl_part(states[bit])
    return ProtocolTranscript(
        protocol="datahide",
        seed=seed,
        inputs=inputs,
        intermediates={},
        tables=tables,
        verdicts={"perfectly_secure": audit.verdict == "perfectly secure"},
    )


def demo_locc_decode(seed, bit=None, **_):
    return locc_decode(0 if bit is None else bit, seed=seed)


def demo_secret_share(theory, seed, **_):
    comp = _composite(theory)
    if theory == "two-rebit":
        states = [local_encode_rebit(0), local_encode_rebit(1)]
        meas, swap = comp.measurements["yy-parity"], rebit_swap_resource()
    elif theory == "bct":
        states = [bct_level(0, 0, "+"), bct_level(0, 0, "-")]
        meas, swap = comp.measurements["sign"], bct_swap_resource()
    else:
        raise UnsupportedTheoryError("the secret-sharing demo supports two-rebit and bct")
    report = secret_sharing_conditions(comp, states[0], states[1], meas, swap)
    return ProtocolTranscript(
        protocol="secret-share",
        seed=seed,
        inputs={"theory": theory, "omega0": states[0], "omega1": states[1], "resource": swap.resource},
        intermediates={"residuals": report.residuals},
        tables={"conditions": report.conditions, "protocol": report.protocol},
        verdicts={
            "conditions_hold": report.verdict,
            "decodable": bool(report.protocol and report.protocol["decodable"]),
        },
    )


DEMOS: dict[str, Callable[..., ProtocolTranscript]] = {
    "bell": demo_bell,
    "steering": demo_steering,
    "teleport": demo_teleport,
    "densecode": demo_densecode,
    "datahide": demo_datahide,
    "locc-decode": demo_locc_decode,
    "secret-share": demo_secret_share,
}


def run_demo(name: str, theory: str = "two-rebit", state: str | None = None, omega=None, seed=None, bit=None, message=(0, 0)):
    """Run a named demonstration and return its transcript.

    ``state`` names one of the theory's states; ``omega`` overrides it with
    explicit coordinates.
    """
    if name not in DEMOS:
        raise ContractError(f"unknown demo {name!r}; known: {', '.join(DEMO_NAMES)}")
    if omega is None and name in ("bell", "steering", "teleport"):
        state = "omega-plus" if state is None else state
        states = named_states(theory)
        if state not in states:
            raise ContractError(f"unknown state {state!r} for {theory!r}; known: {', '.join(sorted(states))}")
        omega = states[state]
    if omega is not None:
        omega = np.asarray(omega, dtype=float)
    return DEMOS[name](theory=theory, state_name=state, omega=omega, seed=seed, bit=bit, message=message)
