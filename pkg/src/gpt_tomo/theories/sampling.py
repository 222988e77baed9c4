"""Seeded random states for property checks and demonstrations."""

from __future__ import annotations

import numpy as np

from ..model import CompositeSystem
from .pauli import TWO_QUBIT_LABELS, TWO_REBIT_LABELS, from_operator, hermitian_min_eigenvalue, to_operator

DEFAULT_SEED = 0x67707431  # the ASCII bytes of "gpt1"


def default_rng(seed: int | None = None) -> np.random.Generator:
    return np.random.default_rng(DEFAULT_SEED if seed is None else seed)


def random_rebit_pure(rng: np.random.Generator) -> np.ndarray:
    t = rng.uniform(0, 2 * np.pi)
    return np.array([1.0, np.cos(t), np.sin(t)])


def random_qubit_pure(rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=3)
    return np.concatenate([[1.0], v / np.linalg.norm(v)])


def random_separable(comp: CompositeSystem, rng: np.random.Generator, terms: int = 4, noise: float = 0.1):
    """A random separable state with its decomposition.

    The state is ``(1 - noise) sum_i p_i a_i [x] b_i + noise * mixed``,
    with random pure local states; ``noise > 0`` keeps it in the interior
    of the separable set.

    Returns
    -------
    omega : numpy.ndarray
    weights, states_a, states_b : numpy.ndarray
    """
    pure = random_qubit_pure if comp.sys_a.dim == 4 else random_rebit_pure
    a = np.array([pure(rng) for _ in range(terms)])
    b = np.array([pure(rng) for _ in range(terms)])
    p = rng.dirichlet(np.ones(terms)) * (1 - noise)
    mixed_a = np.eye(comp.sys_a.dim)[0]
    mixed_b = np.eye(comp.sys_b.dim)[0]
    if noise > 0:
        a = np.vstack([a, mixed_a])
        b = np.vstack([b, mixed_b])
        p = np.append(p, noise)
    rows = np.einsum("ia,ib->iab", a, b).reshape(len(p), -1) @ comp.state_product.T
    return p @ rows, p, a, b


def random_real_state(rng: np.random.Generator, rank: int = 4) -> np.ndarray:
    """Two-rebit state from a real Wishart matrix."""
    g = rng.normal(size=(4, rank))
    rho = g @ g.T
    return from_operator(rho / np.trace(rho), TWO_REBIT_LABELS)


def random_complex_state(rng: np.random.Generator, rank: int = 4) -> np.ndarray:
    """Two-qubit state from a complex Wishart matrix."""
    g = rng.normal(size=(4, rank)) + 1j * rng.normal(size=(4, rank))
    rho = g @ g.conj().T
    return from_operator(rho / np.trace(rho).real, TWO_QUBIT_LABELS)


def yy_range(omega) -> tuple[float, float]:
    """Interval of ``t`` keeping ``omega + t * YY`` positive, by bisection.

    Positivity is preserved on an interval because the minimum eigenvalue
    is concave in ``t``.
    """
    omega = np.asarray(omega, dtype=float)
    yy = np.zeros(10)
    yy[-1] = 1.0

    def ok(t):
        return hermitian_min_eigenvalue(to_operator(omega + t * yy, TWO_REBIT_LABELS)) >= 0

    bounds = []
    for sign in (-1.0, 1.0):
        lo, hi = 0.0, 2.0
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            lo, hi = (mid, hi) if ok(sign * mid) else (lo, mid)
        bounds.append(sign * lo)
    return bounds[0], bounds[1]


def random_tnl_only(comp: CompositeSystem, rng: np.random.Generator):
    """A two-rebit state with a separable product part and a nonzero ``YY`` part.

    Returns
    -------
    omega : numpy.ndarray
    tl_part : numpy.ndarray
        The separable state that ``omega`` projects to.
    """
    sep, *_ = random_separable(comp, rng, terms=int(rng.integers(2, 6)), noise=float(rng.uniform(0.05, 0.5)))
    low, high = yy_range(sep)
    frac = rng.uniform(0.2, 0.9)
    t = frac * (high if rng.random() < 0.5 else low)
    omega = sep.copy()
    omega[-1] += t
    return omega, sep
