"""Pauli-coordinate machinery for real and complex quantum theory.

A state on ``n`` qubits (or rebits) has coordinates ``s_P = Tr(rho P)`` over a
list of Pauli strings, so ``rho = 2^-n sum_P s_P P``.  An effect ``M`` has
coordinates ``mu_P`` with ``M = sum_P mu_P P``.  With these conventions the
Born rule is the dot product ``Tr(M rho) = mu . s``.

Real quantum theory keeps only the strings with an even number of ``Y``
factors; those are exactly the real symmetric Pauli products.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..errors import ContractError, DimensionMismatch
from ..linalg import TOL_NUM, TOL_PSD, min_eigenvalue_symmetric
from ..model import register_cone

PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

REBIT_LABELS = ("I", "X", "Z")
QUBIT_LABELS = ("I", "X", "Y", "Z")
# Product strings in kron order, then the one holistic string.
TWO_REBIT_LABELS = ("II", "XI", "ZI", "IX", "IZ", "XX", "XZ", "ZX", "ZZ", "YY")
TWO_QUBIT_LABELS = tuple(a + b for a in QUBIT_LABELS for b in QUBIT_LABELS)


def real_labels(n: int) -> tuple[str, ...]:
    """Pauli strings on ``n`` sites with an even number of ``Y`` factors."""
    return tuple(
        "".join(p) for p in itertools.product("IXYZ", repeat=n) if "".join(p).count("Y") % 2 == 0
    )


def real_state_space_dim(d: int) -> int:
    """Dimension ``d(d+1)/2`` of the real symmetric ``d x d`` matrices."""
    return d * (d + 1) // 2


@lru_cache(maxsize=None)
def pauli_matrix(label: str) -> np.ndarray:
    """The Pauli string ``label`` as a complex matrix, left factor first."""
    if not label or any(c not in PAULI for c in label):
        raise ContractError(f"invalid Pauli string {label!r}")
    out = np.ones((1, 1), dtype=complex)
    for c in label:
        out = np.kron(out, PAULI[c])
    out.setflags(write=False)
    return out


@lru_cache(maxsize=None)
def _basis_stack(labels: tuple[str, ...]) -> np.ndarray:
    stack = np.array([pauli_matrix(p) for p in labels])
    stack.setflags(write=False)
    return stack


def _n_sites(labels) -> int:
    sizes = {len(p) for p in labels}
    if len(sizes) != 1:
        raise ContractError("Pauli strings of different lengths")
    return sizes.pop()


def to_operator(coords, labels, kind: str = "state") -> np.ndarray:
    """Reconstruct the operator (or a stack of operators) from coordinates.

    The result is real when every string has an even number of ``Y``.
    """
    labels = tuple(labels)
    coords = np.asarray(coords, dtype=float)
    if coords.shape[-1] != len(labels):
        raise DimensionMismatch(f"{coords.shape[-1]} coordinates for {len(labels)} Pauli strings")
    n = _n_sites(labels)
    scale = 2.0**-n if kind == "state" else 1.0
    if kind not in ("state", "effect"):
        raise ContractError(f"kind must be 'state' or 'effect', got {kind!r}")
    op = scale * np.tensordot(coords, _basis_stack(labels), axes=([-1], [0]))
    if all(p.count("Y") % 2 == 0 for p in labels):
        return op.real
    return op


def from_operator(op, labels, kind: str = "state") -> np.ndarray:
    """Coordinates of a Hermitian operator over ``labels``.

    Raises
    ------
    ContractError
        If ``op`` has weight outside the span of ``labels``.
    """
    labels = tuple(labels)
    op = np.asarray(op, dtype=complex)
    n = _n_sites(labels)
    if op.shape != (2**n, 2**n):
        raise DimensionMismatch(f"operator of shape {op.shape} on {n} sites")
    stack = _basis_stack(labels)
    coords = np.einsum("kij,ji->k", stack, op).real
    if kind == "effect":
        coords = coords / 2**n
    rebuilt = to_operator(coords, labels, kind)
    if np.max(np.abs(rebuilt - op)) > TOL_NUM * max(1.0, np.max(np.abs(op))):
        raise ContractError("operator is not in the span of the given Pauli strings")
    return coords


def hermitian_min_eigenvalue(mats) -> np.ndarray | float:
    """Smallest eigenvalue of Hermitian matrices without complex arithmetic.

    A complex Hermitian ``H = R + iJ`` is replaced by the real symmetric
    matrix ``[[R, -J], [J, R]]``, whose spectrum is that of ``H`` doubled.
    """
    h = np.asarray(mats)
    if np.iscomplexobj(h):
        r, j = h.real, h.imag
        if np.max(np.abs(j), initial=0.0) > 0:
            top = np.concatenate([r, -j], axis=-1)
            bottom = np.concatenate([j, r], axis=-1)
            return min_eigenvalue_symmetric(np.concatenate([top, bottom], axis=-2))
        h = r
    return min_eigenvalue_symmetric(h)


def _labels_of(system) -> tuple[str, ...]:
    try:
        return tuple(system.metadata["pauli_labels"])
    except KeyError:
        raise ContractError(f"system {system.name!r} carries no Pauli labels") from None


@register_cone("pauli-state")
def _pauli_state_violation(system, rows):
    labels = _labels_of(system)
    ops = to_operator(rows, labels, "state")
    trace = rows[:, labels.index("I" * len(labels[0]))]
    low = np.atleast_1d(hermitian_min_eigenvalue(ops))
    return np.maximum.reduce([np.zeros(len(rows)), -low, trace - 1.0])


@register_cone("pauli-effect")
def _pauli_effect_violation(system, rows):
    labels = _labels_of(system)
    ops = to_operator(rows, labels, "effect")
    eye = np.eye(ops.shape[-1])
    low = np.atleast_1d(hermitian_min_eigenvalue(ops))
    # Violation of E <= 1 is minus the smallest eigenvalue of 1 - E.
    over = -np.atleast_1d(hermitian_min_eigenvalue(eye - ops))
    return np.maximum.reduce([np.zeros(len(rows)), -low, over])


def placement_matrix(labels_a, labels_b, labels_joint, pos_a, pos_b) -> np.ndarray:
    """Matrix sending ``kron(s_a, s_b)`` to joint coordinates.

    The joint string for local strings ``p`` and ``q`` has the characters of
    ``p`` at positions ``pos_a`` and those of ``q`` at ``pos_b``.  Pauli
    product coordinates multiply, for states and effects alike.
    """
    index = {p: k for k, p in enumerate(labels_joint)}
    width = len(pos_a) + len(pos_b)
    out = np.zeros((len(labels_joint), len(labels_a) * len(labels_b)))
    for i, p in enumerate(labels_a):
        for j, q in enumerate(labels_b):
            chars = [""] * width
            for k, c in zip(pos_a, p):
                chars[k] = c
            for k, c in zip(pos_b, q):
                chars[k] = c
            label = "".join(chars)
            if label not in index:
                raise ContractError(f"joint string {label!r} is missing from the joint labels")
            out[index[label], i * len(labels_b) + j] = 1.0
    return out


def unitary_map(u, labels) -> np.ndarray:
    """Action ``rho -> U rho U^dagger`` on state coordinates.

    The same matrix, transposed, acts on effect coordinates.
    """
    labels = tuple(labels)
    u = np.asarray(u, dtype=complex)
    stack = _basis_stack(labels)
    n = _n_sites(labels)
    conj = np.einsum("ij,kjl,ml->kim", u, stack, u.conj())
    mat = np.einsum("pij,qji->pq", stack, conj).real / 2**n
    # The strings must be closed under the conjugation.
    if not np.allclose(mat.T @ mat, np.eye(len(labels)), atol=1e-9):
        raise ContractError("unitary does not preserve the span of the Pauli strings")
    return mat


@dataclass(frozen=True)
class PauliCoord:
    """Coordinates of an operator over an ordered list of Pauli strings.

    Attributes
    ----------
    labels : tuple of str
    values : numpy.ndarray
    kind : {'state', 'effect'}
    """

    labels: tuple[str, ...]
    values: np.ndarray
    kind: str = "state"

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.shape != (len(self.labels),):
            raise DimensionMismatch("one value per Pauli string is required")
        values.setflags(write=False)
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "values", values)

    def __getitem__(self, label: str) -> float:
        return float(self.values[self.labels.index(label)])

    def operator(self) -> np.ndarray:
        return to_operator(self.values, self.labels, self.kind)

    @classmethod
    def from_operator(cls, op, labels, kind: str = "state") -> "PauliCoord":
        return cls(tuple(labels), from_operator(op, labels, kind), kind)


def ket_projector(ket) -> np.ndarray:
    k = np.asarray(ket, dtype=complex).ravel()
    k = k / np.linalg.norm(k)
    return np.outer(k, k.conj())


def partial_transpose_2x2(rho) -> np.ndarray:
    """Partial transpose on the second factor of a ``4 x 4`` matrix."""
    rho = np.asarray(rho)
    if rho.shape != (4, 4):
        raise DimensionMismatch("expected a 4 x 4 matrix")
    return rho.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4)


def ppt_separable_2x2(rho, tol: float = TOL_PSD) -> bool:
    """Positive-partial-transpose test, which decides separability on two qubits."""
    return bool(hermitian_min_eigenvalue(partial_transpose_2x2(rho)) >= -tol)
