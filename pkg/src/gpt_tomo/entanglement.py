"""Separability and the two kinds of entanglement.

A state is *TNL-entangled* when its holistic part ``Pi_TNL(w)`` is nonzero
and *TL-entangled* when its product part ``Pi_TL(w)`` is not a separable
state (which includes the case where it is not a state at all).

Separability is decided by a route registered on the composite:

``lp``
    Polytopic local state spaces: convex membership against products of
    the local extreme states.
``rebit-ppt``
    Two rebits: separable exactly when the ``YY`` coordinate vanishes and
    the state, read as a two-qubit density matrix, has a positive partial
    transpose.
``qubit-ppt``
    Two qubits: the partial-transpose test, reported as method
    ``cone-predicate``.

For the two quantum routes an explicit decomposition into at most four
product states is built from the zero-concurrence construction on the
two-qubit density matrix, with column generation over the local Bloch balls
as a fallback.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ContractError, UnsupportedTheoryError
from .linalg import TOL_LP, TOL_NUM, conic_membership, convex_membership
from .model import CompositeSystem, product_effects, product_states
from .theories.pauli import hermitian_min_eigenvalue, pauli_matrix, ppt_separable_2x2, to_operator
from .tomography import TomographicDecomposition, decompose

ROUTE_METHODS = {"lp": "lp", "rebit-ppt": "ppt-embed", "qubit-ppt": "cone-predicate"}


@dataclass(frozen=True)
class SeparableDecomposition:
    """``w = sum_i p_i a_i [x] b_i`` with normalised local states.

    Attributes
    ----------
    weights : numpy.ndarray
    states_a, states_b : numpy.ndarray
        Local states as rows.
    residual : float
        Max-norm error of the reconstruction.
    """

    weights: np.ndarray
    states_a: np.ndarray
    states_b: np.ndarray
    residual: float

    def vector(self, comp: CompositeSystem) -> np.ndarray:
        rows = np.einsum("ia,ib->iab", self.states_a, self.states_b).reshape(len(self.weights), -1)
        return self.weights @ (rows @ comp.state_product.T)

    def to_dict(self) -> dict:
        return {
            "weights": self.weights.tolist(),
            "states_a": self.states_a.tolist(),
            "states_b": self.states_b.tolist(),
            "residual": self.residual,
        }


@dataclass(frozen=True)
class EntanglementReport:
    """Classification of a bipartite state.

    Attributes
    ----------
    separable, has_tl, has_tnl : bool
    tnl_component_norm : float
        Operator norm of ``Pi_TNL(w)`` for Pauli-coordinate theories, the
        max-norm of its coordinates otherwise.
    certificate : SeparableDecomposition or None
        A decomposition of ``w`` when separable, or of ``Pi_TL(w)`` when only
        the holistic part is present.
    method : str
    tl_part, tnl_part : numpy.ndarray
    """

    separable: bool
    has_tl: bool
    has_tnl: bool
    tnl_component_norm: float
    certificate: SeparableDecomposition | None
    method: str
    tl_part: np.ndarray = field(repr=False)
    tnl_part: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.separable and (self.has_tl or self.has_tnl):
            raise ContractError("a separable state cannot carry entanglement")
        if not self.separable and not (self.has_tl or self.has_tnl):
            raise ContractError("an entangled state must carry TL or TNL entanglement")

    @property
    def kinds(self) -> frozenset[str]:
        return frozenset(k for k, flag in (("TL", self.has_tl), ("TNL", self.has_tnl)) if flag)

    def to_dict(self) -> dict:
        return {
            "separable": self.separable,
            "has_tl": self.has_tl,
            "has_tnl": self.has_tnl,
            "kinds": sorted(self.kinds),
            "tnl_component_norm": self.tnl_component_norm,
            "method": self.method,
            "tl_part": self.tl_part.tolist(),
            "tnl_part": self.tnl_part.tolist(),
            "certificate": None if self.certificate is None else self.certificate.to_dict(),
        }


def _route(comp: CompositeSystem) -> str:
    if comp.separability not in ROUTE_METHODS:
        raise UnsupportedTheoryError(f"no separability procedure registered for {comp.name!r}")
    return comp.separability


def _is_zero(omega, tol=TOL_NUM) -> bool:
    return bool(np.max(np.abs(omega), initial=0.0) <= tol)


def _labels(system):
    return tuple(system.metadata["pauli_labels"])


def _operator(comp, omega, kind="state"):
    return to_operator(np.asarray(omega, dtype=float), _labels(comp.joint), kind)


def _yy_coordinate(comp, omega) -> float:
    return float(np.asarray(omega)[_labels(comp.joint).index("YY")])


def _lp_certificate(comp, omega) -> SeparableDecomposition | None:
    a, b = comp.sys_a.state_generators, comp.sys_b.state_generators
    norm = comp.joint.unit_effect @ omega
    gens = product_states(comp, a, b)
    res = convex_membership(np.asarray(omega) / norm, gens)
    if not res.feasible:
        return None
    keep = np.flatnonzero(res.weights > 0)
    ia, ib = np.divmod(keep, len(b))
    return SeparableDecomposition(norm * res.weights[keep], a[ia], b[ib], res.residual)


def _best_pure_pair(ymat: np.ndarray, starts: np.ndarray, sweeps: int = 60):
    """Maximise ``(1, n) Y (1, m)^T`` over unit vectors ``n`` and ``m``.

    Alternating exact maximisation from each start direction.
    """
    best = (-np.inf, None, None)
    core = ymat[1:, 1:]
    for n in starts:
        m = None
        for _ in range(sweeps):
            c = ymat[0, 1:] + core.T @ n
            m = c / np.linalg.norm(c) if np.linalg.norm(c) > 0 else np.eye(len(c))[0]
            d = ymat[1:, 0] + core @ m
            n_new = d / np.linalg.norm(d) if np.linalg.norm(d) > 0 else n
            if np.allclose(n_new, n, atol=1e-14):
                n = n_new
                break
            n = n_new
        value = ymat[0, 0] + n @ ymat[1:, 0] + ymat[0, 1:] @ m + n @ core @ m
        if value > best[0]:
            best = (value, n.copy(), m.copy())
    return best


def _sphere_starts(k: int, count: int) -> np.ndarray:
    if k == 2:
        t = 2 * np.pi * np.arange(count) / count
        return np.column_stack([np.cos(t), np.sin(t)])
    i = np.arange(count) + 0.5
    z = 1 - 2 * i / count
    r = np.sqrt(1 - z**2)
    phi = np.pi * (1 + 5**0.5) * i
    return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])


_YY = np.kron(pauli_matrix("Y"), pauli_matrix("Y")).real
_HALF_HADAMARD = 0.5 * np.array([[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]], dtype=float)


def _takagi(a: np.ndarray, tol: float = 1e-12):
    """``a = U diag(s) U^T`` for a complex symmetric ``a`` with unitary ``U``.

    Eigenvectors ``(x; y)`` of ``[[Re a, Im a], [Im a, -Re a]]`` with
    eigenvalue ``s > 0`` give columns ``x + i y`` with ``a conj(u) = s u``; the
    conjugated null space of ``a`` fills the rest.
    """
    n = len(a)
    vals, vecs = np.linalg.eigh(np.block([[a.real, a.imag], [a.imag, -a.real]]))
    pos = vals > tol
    u_pos = vecs[:n, pos] + 1j * vecs[n:, pos]
    # Rows of vh past the rank solve a conj(v^T)... = 0; conjugated they are the u with s = 0.
    null_u = np.linalg.svd(a)[2][int(pos.sum()):].T
    return np.hstack([u_pos, null_u]), np.concatenate([vals[pos], np.zeros(null_u.shape[1])])


def _closing_phases(lam: np.ndarray) -> np.ndarray | None:
    """Phases ``t`` with ``sum_i lam_i exp(i t_i) = 0`` for four sorted lengths."""
    l1, l2, l3, l4 = lam
    if l1 > l2 + l3 + l4 + 1e-9:
        return None
    if l1 <= 1e-15:
        return np.zeros(4)
    # Close the triangle (l1, l2, L) and split L into l3 and l4.
    big = min(max(l1 - l2, l3 - l4), l3 + l4)
    alpha = np.arccos(np.clip((big**2 - l1**2 - l2**2) / (2 * l1 * l2), -1, 1)) if l2 > 0 else np.pi
    q = -(l1 + l2 * np.exp(1j * alpha))
    if abs(q) <= 1e-15:
        return np.array([0.0, alpha, 0.0, np.pi])
    base = np.angle(q)
    phi = np.arccos(np.clip((abs(q) ** 2 + l3**2 - l4**2) / (2 * abs(q) * l3), -1, 1)) if l3 > 0 else 0.0
    r3 = l3 * np.exp(1j * (base + phi))
    r4 = q - r3
    return np.array([0.0, alpha, base + phi, np.angle(r4) if abs(r4) > 0 else 0.0])


def zero_concurrence_products(rho) -> list[tuple[float, np.ndarray, np.ndarray]] | None:
    """Split a two-qubit density matrix into four product pure terms.

    Returns ``[(p_j, a_j, b_j)]`` with unit kets and
    ``rho = sum_j p_j |a_j b_j><a_j b_j|``, or ``None`` when the
    concurrence is positive.  The subnormalised eigenvectors are rotated so
    the bilinear form ``x^T (Y x Y) x`` becomes diagonal with entries
    ``lam``; the phases that close the polygon on ``lam`` and a Hadamard
    rotation then make the form vanish on every new vector, and a vanishing
    form means the vector is a product.
    """
    rho = np.asarray(rho, dtype=complex)
    vals, vecs = np.linalg.eigh(rho)
    if vals.min() < -TOL_NUM:
        return None
    v = vecs * np.sqrt(np.clip(vals, 0, None))
    u, lam = _takagi(v.T @ _YY @ v)
    x = v @ u.conj()
    order = np.argsort(-lam)
    x, lam = x[:, order], lam[order]
    theta = _closing_phases(lam)
    if theta is None:
        return None
    z = (x * np.exp(1j * theta / 2)) @ _HALF_HADAMARD.T
    out = []
    for col in z.T:
        weight = float(np.vdot(col, col).real)
        if weight <= 1e-15:
            continue
        left, sv, right = np.linalg.svd(col.reshape(2, 2))
        if sv[1] > 1e-7 * sv[0]:
            return None
        out.append((weight, left[:, 0], right[0]))
    return out


def _ket_coordinates(ket, labels) -> np.ndarray:
    rho = np.outer(ket, ket.conj())
    return np.array([np.trace(pauli_matrix(p) @ rho).real for p in labels])


def concurrence_certificate(comp: CompositeSystem, omega) -> SeparableDecomposition | None:
    """Separable decomposition of a two-rebit or two-qubit state.

    For rebits the complex product terms are projected onto the real
    Bloch disc; the discarded ``Y`` parts cancel exactly when the ``YY``
    coordinate of ``omega`` vanishes.  The reconstruction is checked and
    ``None`` returned if it misses by more than ``TOL_LP``.
    """
    omega = np.asarray(omega, dtype=float)
    terms = zero_concurrence_products(_operator(comp, omega))
    if not terms:
        return None
    la, lb = _labels(comp.sys_a), _labels(comp.sys_b)
    weights = np.array([t[0] for t in terms])
    a = np.array([_ket_coordinates(t[1], la) for t in terms])
    b = np.array([_ket_coordinates(t[2], lb) for t in terms])
    cert = SeparableDecomposition(weights, a, b, 0.0)
    residual = float(np.max(np.abs(cert.vector(comp) - omega)))
    if residual > TOL_LP:
        return None
    return SeparableDecomposition(weights, a, b, residual)


def ball_certificate(comp: CompositeSystem, omega, max_rounds: int = 400, tol: float = TOL_LP) -> SeparableDecomposition | None:
    """Decompose ``omega`` into products of pure Bloch-ball states.

    Column generation: solve the convex-membership LP over the current
    product columns; if it is infeasible, use its separating functional to
    find the most violated pure product and add it.  Returns ``None`` when no
    product improves the functional, i.e. ``omega`` is not separable, or
    when ``omega`` leaves the span of the products.
    """
    omega = np.asarray(omega, dtype=float)
    norm = comp.joint.unit_effect @ omega
    target = omega / norm
    # Products span only the image of the product map.
    coeffs = np.linalg.lstsq(comp.state_product, target, rcond=None)[0]
    if np.max(np.abs(comp.state_product @ coeffs - target)) > tol:
        return None
    la, lb = comp.sys_a.state_generators, comp.sys_b.state_generators
    cols_a, cols_b = [*la], [*lb]
    pairs = [(i, j) for i in range(len(la)) for j in range(len(lb))]
    gens = list(product_states(comp, la, lb))
    starts = _sphere_starts(comp.sys_a.dim - 1, 48)
    for _ in range(max_rounds):
        res = convex_membership(target, np.array(gens), tol=tol)
        if res.feasible:
            keep = np.flatnonzero(res.weights > 0)
            a = np.array([cols_a[pairs[k][0]] for k in keep])
            b = np.array([cols_b[pairs[k][1]] for k in keep])
            return SeparableDecomposition(norm * res.weights[keep], a, b, res.residual)
        y = res.witness
        ymat = (comp.state_product.T @ y[:-1]).reshape(comp.sys_a.dim, comp.sys_b.dim)
        value, n, m = _best_pure_pair(ymat, starts)
        if value + y[-1] <= tol:
            return None
        cols_a.append(np.concatenate([[1.0], n]))
        cols_b.append(np.concatenate([[1.0], m]))
        pairs.append((len(cols_a) - 1, len(cols_b) - 1))
        gens.append(comp.state_product @ np.kron(cols_a[-1], cols_b[-1]))
    return None


def _decide(comp, omega, want_certificate):
    route = _route(comp)
    if route == "lp":
        cert = _lp_certificate(comp, omega)
        return cert is not None, cert
    if route == "rebit-ppt":
        ok = abs(_yy_coordinate(comp, omega)) <= TOL_NUM and ppt_separable_2x2(_operator(comp, omega))
    else:
        ok = ppt_separable_2x2(_operator(comp, omega))
    cert = None
    if ok and want_certificate:
        cert = concurrence_certificate(comp, omega)
        if cert is None:
            cert = ball_certificate(comp, omega)
    return ok, cert


def is_separable_state(comp: CompositeSystem, omega, certificate: bool = False):
    """Decide separability of a joint state.

    Parameters
    ----------
    comp : CompositeSystem
    omega : array_like
        A joint state.  The zero vector is separable.
    certificate : bool
        Also return a :class:`SeparableDecomposition` (or ``None``).

    Raises
    ------
    UnsupportedTheoryError
        When no separability route is registered for ``comp``.
    """
    omega = np.asarray(omega, dtype=float)
    if _is_zero(omega):
        empty = SeparableDecomposition(np.zeros(0), np.zeros((0, comp.sys_a.dim)), np.zeros((0, comp.sys_b.dim)), 0.0)
        return (True, empty) if certificate else True
    ok, cert = _decide(comp, omega, certificate)
    return (ok, cert) if certificate else ok


def tnl_component_norm(comp: CompositeSystem, tnl_part) -> float:
    tnl_part = np.asarray(tnl_part, dtype=float)
    if "pauli_labels" in comp.joint.metadata:
        op = _operator(comp, tnl_part)
        low = hermitian_min_eigenvalue(op)
        high = -hermitian_min_eigenvalue(-op)
        return float(max(abs(low), abs(high)))
    return float(np.max(np.abs(tnl_part), initial=0.0))


def has_tnl_entanglement(comp: CompositeSystem, omega, dec: TomographicDecomposition | None = None) -> bool:
    dec = decompose(comp) if dec is None else dec
    return not _is_zero(dec.tnl_part(omega))


def has_tl_entanglement(comp: CompositeSystem, omega, dec: TomographicDecomposition | None = None) -> bool:
    dec = decompose(comp) if dec is None else dec
    tl = dec.tl_part(omega)
    if not comp.joint.is_state(tl):
        return True
    return not is_separable_state(comp, tl)


def classify(comp: CompositeSystem, omega, dec: TomographicDecomposition | None = None) -> EntanglementReport:
    """Full entanglement classification of a joint state.

    Raises
    ------
    ContractError
        If ``omega`` is not a state of the joint system.
    """
    omega = np.asarray(omega, dtype=float)
    if omega.shape != (comp.joint.dim,) or not comp.joint.is_state(omega):
        raise ContractError("input is not a state of the joint system")
    dec = decompose(comp) if dec is None else dec
    tl, tnl = dec.tl_part(omega), dec.tnl_part(omega)
    has_tnl = not _is_zero(tnl)
    tl_valid = comp.joint.is_state(tl)
    if tl_valid:
        tl_sep, tl_cert = is_separable_state(comp, tl, certificate=True)
    else:
        tl_sep, tl_cert = False, None
    if has_tnl:
        separable = is_separable_state(comp, omega)
        cert = tl_cert
    else:
        separable, cert = tl_sep, tl_cert
    return EntanglementReport(
        separable=bool(separable),
        has_tl=not tl_sep,
        has_tnl=has_tnl,
        tnl_component_norm=tnl_component_norm(comp, tnl),
        certificate=cert if tl_sep else None,
        method=ROUTE_METHODS[_route(comp)],
        tl_part=tl,
        tnl_part=tnl,
    )


def is_separable_effect(comp: CompositeSystem, effect, dec: TomographicDecomposition | None = None) -> bool:
    """Whether an effect is a non-negative combination of product effects.

    Polytopic theories use a conic LP over products of local effect
    generators.  For two rebits the effect must have no ``YY`` part and a
    positive partial transpose; for two qubits the partial transpose alone
    decides.
    """
    effect = np.asarray(effect, dtype=float)
    if _is_zero(effect):
        return True
    route = _route(comp)
    if route == "lp":
        gens = product_effects(comp, comp.sys_a.effect_generators, comp.sys_b.effect_generators)
        return conic_membership(effect, gens).feasible
    dec = decompose(comp) if dec is None else dec
    if not _is_zero(dec.tnl_effect(effect)):
        return False
    return ppt_separable_2x2(_operator(comp, effect, "effect"))
