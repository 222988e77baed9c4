"""Concrete theories: classical, bilocal classical, real and complex quantum."""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from ..errors import UnsupportedTheoryError
from ..model import CompositeSystem, GptSystem, boxtimes_state
from .classical import (
    SIGNS,
    bct_cross_matrix,
    bct_index,
    bct_level,
    bct_local_reversible,
    make_bct_pair,
    make_bct_quad,
    make_classical,
    make_classical_pair,
)
from .pauli import (
    QUBIT_LABELS,
    REBIT_LABELS,
    TWO_QUBIT_LABELS,
    TWO_REBIT_LABELS,
    PauliCoord,
    from_operator,
    hermitian_min_eigenvalue,
    partial_transpose_2x2,
    pauli_matrix,
    placement_matrix,
    ppt_separable_2x2,
    real_labels,
    real_state_space_dim,
    to_operator,
    unitary_map,
)
from .quantum import (
    BELL_KETS,
    bell_states,
    CROSS_POSITIONS,
    TWISTED_POSITIONS,
    cross_product_matrix,
    iota_coords,
    iota_embed,
    iota_matrix,
    make_qubit,
    make_qubit_pair,
    make_rebit,
    make_rebit_quad,
    make_two_rebit,
    omega_pair,
    rebit_quad_labels,
    swirl_operator,
)

THEORY_NAMES = ("classical:<n>", "bct", "rebit", "two-rebit", "qubit-pair", "rebit-quad", "bct-quad")

# States for which a local broadcasting protocol is known.
LOCALLY_BROADCASTABLE = ("omega-plus", "omega-minus")


@lru_cache(maxsize=None)
def resolve_theory(name: str) -> GptSystem | CompositeSystem:
    """Look up a shipped system or composite by its identifier.

    ``classical:<n>`` names the composite of two ``n``-level classical
    systems.
    """
    if name.startswith("classical:"):
        try:
            n = int(name.split(":", 1)[1])
        except ValueError:
            raise UnsupportedTheoryError(f"bad classical level count in {name!r}") from None
        if n < 1:
            raise UnsupportedTheoryError(f"bad classical level count in {name!r}")
        return make_classical_pair(n)
    builders = {
        "bct": make_bct_pair,
        "bct-quad": make_bct_quad,
        "rebit": make_rebit,
        "qubit": make_qubit,
        "two-rebit": make_two_rebit,
        "qubit-pair": make_qubit_pair,
        "rebit-quad": make_rebit_quad,
    }
    if name not in builders:
        raise UnsupportedTheoryError(f"unknown theory {name!r}; known: {', '.join(THEORY_NAMES)}")
    return builders[name]()


def rebit_state(theta: float, radius: float = 1.0) -> np.ndarray:
    """Rebit with Bloch vector ``radius * (cos theta, sin theta)`` in the x-z plane."""
    return np.array([1.0, radius * np.cos(theta), radius * np.sin(theta)])


def rebit_effect(theta: float) -> np.ndarray:
    """Projector onto the pure rebit state at angle ``theta``."""
    return 0.5 * rebit_state(theta)


def named_states(theory: str) -> dict[str, np.ndarray]:
    """Named states of a shipped theory, keyed by identifier."""
    comp = resolve_theory(theory)
    if theory == "two-rebit":
        plus, minus = omega_pair()
        zero = rebit_state(np.pi / 2)
        out = {"omega-plus": plus, "omega-minus": minus, **bell_states(TWO_REBIT_LABELS)}
        out.update({
            "omega-0": plus,
            "omega-1": minus,
            "mixed": np.eye(10)[0],
            "product-00": boxtimes_state(comp, zero, zero),
        })
        return out
    if theory == "qubit-pair":
        plus, minus = omega_pair()
        zero = np.array([1.0, 0.0, 0.0, 1.0])
        return {
            **bell_states(TWO_QUBIT_LABELS),
            "omega-plus": iota_coords(plus),
            "omega-minus": iota_coords(minus),
            "mixed": np.eye(16)[0],
            "product-00": boxtimes_state(comp, zero, zero),
        }
    if theory == "bct":
        out = {f"{i}{j}{s}": bct_level(i, j, s) for i in (0, 1) for j in (0, 1) for s in SIGNS}
        for i in (0, 1):
            for j in (0, 1):
                out[f"product-{i}{j}"] = boxtimes_state(comp, np.eye(2)[i], np.eye(2)[j])
        out["mixed"] = np.full(8, 1 / 8)
        return out
    if theory == "rebit":
        return {"zero": rebit_state(np.pi / 2), "one": rebit_state(-np.pi / 2),
                "plus": rebit_state(0.0), "minus": rebit_state(np.pi), "mixed": np.eye(3)[0]}
    if theory.startswith("classical:"):
        n = comp.sys_a.dim
        out = {
            f"product-{i}-{j}": boxtimes_state(comp, np.eye(n)[i], np.eye(n)[j])
            for i in range(n) for j in range(n)
        }
        out["correlated"] = sum(out[f"product-{i}-{i}"] for i in range(n)) / n
        out["uniform"] = np.full(n * n, 1 / (n * n))
        return out
    raise UnsupportedTheoryError(f"no named states for {theory!r}")


__all__ = [
    "BELL_KETS",
    "LOCALLY_BROADCASTABLE",
    "QUBIT_LABELS",
    "REBIT_LABELS",
    "SIGNS",
    "THEORY_NAMES",
    "TWO_QUBIT_LABELS",
    "TWO_REBIT_LABELS",
    "PauliCoord",
    "bct_cross_matrix",
    "bct_index",
    "bct_level",
    "bct_local_reversible",
    "bell_states",
    "CROSS_POSITIONS",
    "TWISTED_POSITIONS",
    "cross_product_matrix",
    "from_operator",
    "hermitian_min_eigenvalue",
    "iota_coords",
    "iota_embed",
    "iota_matrix",
    "make_bct_pair",
    "make_bct_quad",
    "make_classical",
    "make_classical_pair",
    "make_qubit",
    "make_qubit_pair",
    "make_rebit",
    "make_rebit_quad",
    "make_two_rebit",
    "named_states",
    "omega_pair",
    "partial_transpose_2x2",
    "pauli_matrix",
    "placement_matrix",
    "ppt_separable_2x2",
    "real_labels",
    "real_state_space_dim",
    "rebit_effect",
    "rebit_quad_labels",
    "rebit_state",
    "resolve_theory",
    "swirl_operator",
    "to_operator",
    "unitary_map",
]
