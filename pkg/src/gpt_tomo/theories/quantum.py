"""Real and complex quantum systems in Pauli coordinates."""

from __future__ import annotations

import numpy as np

from ..linalg import independent_subset
from ..model import CompositeSystem, GptSystem
from .pauli import (
    QUBIT_LABELS,
    REBIT_LABELS,
    TWO_QUBIT_LABELS,
    TWO_REBIT_LABELS,
    from_operator,
    ket_projector,
    placement_matrix,
    real_labels,
    to_operator,
)

_S = 1 / np.sqrt(2)
BELL_KETS = {
    "phi-plus": np.array([_S, 0, 0, _S]),
    "phi-minus": np.array([_S, 0, 0, -_S]),
    "psi-plus": np.array([0, _S, _S, 0]),
    "psi-minus": np.array([0, _S, -_S, 0]),
}


def _pauli_system(name, labels, states, effects, represents):
    labels = tuple(labels)
    unit = np.zeros(len(labels))
    unit[labels.index("I" * len(labels[0]))] = 1.0
    return GptSystem(
        name=name,
        dim=len(labels),
        state_generators=states,
        effect_generators=effects,
        unit_effect=unit,
        state_cone="pauli-state",
        effect_cone="pauli-effect",
        metadata={"pauli_labels": list(labels), "represents": represents},
    )


def make_rebit(frame: int = 8) -> GptSystem:
    """Real two-level system: the Bloch disk.

    Coordinates are ``(1, a_x, a_z)`` on the labels ``I, X, Z``.  The state
    generators are ``frame`` equally spaced points on the boundary circle;
    membership itself is decided exactly by the disk (positivity) predicate.
    """
    theta = 2 * np.pi * np.arange(frame) / frame
    pts = np.column_stack([np.cos(theta), np.sin(theta)])
    pts[np.abs(pts) < 1e-15] = 0.0
    states = np.column_stack([np.ones(frame), pts])
    effects = np.vstack([[1.0, 0.0, 0.0], 0.5 * states])
    return _pauli_system("rebit", REBIT_LABELS, states, effects, "rebit")


def make_qubit() -> GptSystem:
    """Complex two-level system generated by the six Pauli eigenstates."""
    dirs = np.vstack([np.eye(3), -np.eye(3)])
    states = np.column_stack([np.ones(6), dirs])
    effects = np.vstack([[1.0, 0, 0, 0], 0.5 * states])
    return _pauli_system("qubit", QUBIT_LABELS, states, effects, "qubit")


def _pairs(rows_a, rows_b):
    return np.einsum("ia,jb->ijab", rows_a, rows_b).reshape(len(rows_a) * len(rows_b), -1)


def _pauli_composite(name, sys_a, sys_b, labels, extra_states, extra_effects, separability, measurements, represents, pos=None):
    la, lb = sys_a.metadata["pauli_labels"], sys_b.metadata["pauli_labels"]
    na, nb = len(la[0]), len(lb[0])
    if pos is None:
        pos = (tuple(range(na)), tuple(range(na, na + nb)))
    prod = placement_matrix(la, lb, labels, *pos)
    states = _pairs(sys_a.state_generators, sys_b.state_generators) @ prod.T
    effects = _pairs(sys_a.effect_generators, sys_b.effect_generators) @ prod.T
    joint = _pauli_system(
        name,
        labels,
        np.vstack([states, *extra_states]) if extra_states else states,
        np.vstack([effects, *extra_effects]) if extra_effects else effects,
        represents,
    )
    return CompositeSystem(
        name=name,
        sys_a=sys_a,
        sys_b=sys_b,
        joint=joint,
        state_product=prod,
        effect_product=prod,
        separability=separability,
        measurements=measurements,
        metadata={"pauli_positions": [list(pos[0]), list(pos[1])]},
    )


def bell_states(labels=TWO_REBIT_LABELS) -> dict[str, np.ndarray]:
    """Coordinates of the four Bell states."""
    return {k: from_operator(ket_projector(v), labels) for k, v in BELL_KETS.items()}


def omega_pair() -> tuple[np.ndarray, np.ndarray]:
    """The two-rebit states ``(II + YY)/4`` and ``(II - YY)/4``."""
    plus = np.zeros(10)
    plus[0], plus[-1] = 1.0, 1.0
    minus = plus.copy()
    minus[-1] = -1.0
    return plus, minus


def make_two_rebit(frame: int = 8) -> CompositeSystem:
    """Two rebits with the real-quantum composite.

    The joint space is spanned by the ten real Pauli products, nine of
    which are products of local strings and one of which (``YY``) is not.
    """
    r = make_rebit(frame)
    bell = bell_states(TWO_REBIT_LABELS)
    omegas = omega_pair()
    parity = 0.5 * np.array(omegas)
    bell_effects = np.array([v / 4 for v in bell.values()])
    return _pauli_composite(
        "two-rebit",
        r,
        r,
        TWO_REBIT_LABELS,
        [np.array(omegas), np.array(list(bell.values()))],
        [parity, bell_effects],
        "rebit-ppt",
        {"yy-parity": parity, "bell": bell_effects},
        "two-rebit",
    )


def make_qubit_pair() -> CompositeSystem:
    """Two qubits with the complex-quantum (tomographically local) composite."""
    q = make_qubit()
    bell = bell_states(TWO_QUBIT_LABELS)
    bell_effects = np.array([v / 4 for v in bell.values()])
    return _pauli_composite(
        "qubit-pair",
        q,
        q,
        TWO_QUBIT_LABELS,
        [np.array(list(bell.values()))],
        [bell_effects],
        "qubit-ppt",
        {"bell": bell_effects},
        "qubit-pair",
    )


def rebit_quad_labels() -> tuple[str, ...]:
    """Four-rebit real Pauli strings on sites ``(A, A', B, B')``.

    The first 100 are products of two-rebit strings on ``AA'`` and ``BB'``
    in kron order; the remaining 36 carry one ``Y`` on each side.
    """
    pair = TWO_REBIT_LABELS
    products = tuple(p + q for p in pair for q in pair)
    rest = tuple(p for p in real_labels(4) if p not in set(products))
    return products + rest


CROSS_POSITIONS = ((0, 2), (1, 3))
TWISTED_POSITIONS = ((0, 3), (1, 2))


def cross_product_matrix(positions=CROSS_POSITIONS) -> np.ndarray:
    """Sends ``kron(w_AB, v_A'B')`` to the ``AA'|BB'`` coordinates.

    With ``positions=TWISTED_POSITIONS`` the pairs are ``AB'`` and ``A'B``.
    """
    return placement_matrix(TWO_REBIT_LABELS, TWO_REBIT_LABELS, rebit_quad_labels(), *positions)


def make_rebit_quad(frame: int = 4) -> CompositeSystem:
    """Four rebits grouped as ``AA'`` versus ``BB'``.

    Each party holds a two-rebit system (built with a ``frame``-point local
    rebit frame to keep the generator lists small).  Besides products, the
    joint generators include states ``w [x] v`` on the pairs ``AB | A'B'`` and
    ``AB' | A'B`` running across the cut, so that they span all 136 real
    Pauli strings.
    """
    local = make_two_rebit(frame)
    labels = rebit_quad_labels()
    plus, minus = omega_pair()
    named = {**bell_states(), "omega-plus": plus, "omega-minus": minus}
    keys = ("omega-plus", "omega-minus", "phi-plus", "psi-minus")
    state_basis = independent_subset(local.joint.state_generators)
    effect_basis = independent_subset(local.joint.effect_generators)
    parity = local.measurements["yy-parity"]
    extra_states, extra_effects = [], []
    for positions in (CROSS_POSITIONS, TWISTED_POSITIONS):
        cross = cross_product_matrix(positions)
        # Pairs across the cut, enough to span the strings that are not products.
        extra_states.append(_pairs(state_basis, state_basis) @ cross.T)
        extra_effects.append(_pairs(effect_basis, effect_basis) @ cross.T)
    cross = cross_product_matrix()
    extra_states.append(np.array([cross @ np.kron(named[p], named[q]) for p in keys for q in keys]))
    extra_effects.append(np.array([cross @ np.kron(e, f) for e in parity for f in parity]))
    return _pauli_composite(
        "rebit-quad",
        local.joint,
        local.joint,
        labels,
        extra_states,
        extra_effects,
        None,
        {},
        "rebit-quad",
        pos=((0, 1), (2, 3)),
    )


def iota_matrix() -> np.ndarray:
    """Embedding of two-rebit coordinates into two-qubit coordinates."""
    out = np.zeros((16, 10))
    for j, p in enumerate(TWO_REBIT_LABELS):
        out[TWO_QUBIT_LABELS.index(p), j] = 1.0
    return out


def iota_coords(omega) -> np.ndarray:
    return iota_matrix() @ np.asarray(omega, dtype=float)


def iota_embed(omega) -> np.ndarray:
    """The two-rebit state as a ``4 x 4`` density matrix on two qubits."""
    return np.asarray(to_operator(np.asarray(omega, dtype=float), TWO_REBIT_LABELS), dtype=complex)


def swirl_operator() -> np.ndarray:
    """Map on two-qubit coordinates averaging each qubit with its conjugate.

    Local complex conjugation flips the sign of ``Y``, so the average keeps
    exactly the strings with no ``Y`` factor.  In particular ``YY`` is
    removed even though it is real.
    """
    return np.diag([0.0 if "Y" in p else 1.0 for p in TWO_QUBIT_LABELS])
