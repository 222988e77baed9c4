"""Splitting a composite into its product part and its holistic part.

Products of local states span a subspace ``AB_x`` of the joint state space
and products of local effects span ``AB*_x`` of the joint effect space.
The holistic state space ``H_S`` is the annihilator of ``AB*_x`` and the
holistic effect space ``H_E`` is the annihilator of ``AB_x``.  ``Pi_TL`` is
the projector onto ``AB_x`` along ``H_S``; ``Pi_TNL = I - Pi_TL``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import RankError
from .linalg import TOL_NUM, Subspace, annihilator, dual_basis, independent_subset, oblique_projector, span_basis, sum_subspace
from .model import CompositeSystem, product_effects, product_states


@dataclass(frozen=True)
class TomographicDecomposition:
    """The four subspaces of a composite and the two projectors.

    Attributes
    ----------
    composite : CompositeSystem
    ab_tensor : Subspace
        Span of product states.
    ab_tensor_dual : Subspace
        Span of product effects.
    h_state, h_effect : Subspace
        Holistic state and effect spaces.
    pi_tl, pi_tnl : numpy.ndarray
        Projectors acting on joint state coordinates.  Effects transform by
        the transpose.
    """

    composite: CompositeSystem = field(repr=False)
    ab_tensor: Subspace
    ab_tensor_dual: Subspace
    h_state: Subspace
    h_effect: Subspace
    pi_tl: np.ndarray
    pi_tnl: np.ndarray

    @property
    def dims(self) -> dict[str, int]:
        return {
            "total": self.composite.joint.dim,
            "ab_tensor": self.ab_tensor.dim,
            "ab_tensor_dual": self.ab_tensor_dual.dim,
            "h_state": self.h_state.dim,
            "h_effect": self.h_effect.dim,
        }

    def tl_part(self, omega) -> np.ndarray:
        return self.pi_tl @ np.asarray(omega, dtype=float)

    def tnl_part(self, omega) -> np.ndarray:
        return self.pi_tnl @ np.asarray(omega, dtype=float)

    def tl_effect(self, e) -> np.ndarray:
        """The functional ``e o Pi_TL``."""
        return self.pi_tl.T @ np.asarray(e, dtype=float)

    def tnl_effect(self, e) -> np.ndarray:
        return self.pi_tnl.T @ np.asarray(e, dtype=float)


def tl_subspaces(comp: CompositeSystem) -> tuple[Subspace, Subspace]:
    """``(AB_x, AB*_x)``: spans of product states and of product effects."""
    n = comp.joint.dim
    s = product_states(comp, comp.sys_a.state_generators, comp.sys_b.state_generators)
    e = product_effects(comp, comp.sys_a.effect_generators, comp.sys_b.effect_generators)
    return span_basis(s, ambient_dim=n), span_basis(e, ambient_dim=n)


def holistic_subspaces(comp: CompositeSystem) -> tuple[Subspace, Subspace]:
    """``(H_S, H_E)``, the annihilators of ``AB*_x`` and ``AB_x``."""
    ab, ab_dual = tl_subspaces(comp)
    return annihilator(ab_dual), annihilator(ab)


def build_pi_tl(comp: CompositeSystem) -> np.ndarray:
    """``Pi_TL`` as the oblique projector onto ``AB_x`` along ``H_S``."""
    ab, ab_dual = tl_subspaces(comp)
    return oblique_projector(ab, annihilator(ab_dual))


def build_pi_tnl(comp: CompositeSystem) -> np.ndarray:
    return np.eye(comp.joint.dim) - build_pi_tl(comp)


def decompose(comp: CompositeSystem) -> TomographicDecomposition:
    """Compute every subspace and projector of ``comp`` once."""
    ab, ab_dual = tl_subspaces(comp)
    h_state, h_effect = annihilator(ab_dual), annihilator(ab)
    pi_tl = oblique_projector(ab, h_state)
    pi_tnl = np.eye(comp.joint.dim) - pi_tl
    for p in (pi_tl, pi_tnl):
        p[np.abs(p) < 1e-15] = 0.0
        p.setflags(write=False)
    return TomographicDecomposition(comp, ab, ab_dual, h_state, h_effect, pi_tl, pi_tnl)


def _local_bases(system):
    """A basis of states and a basis of effects taken from the generators."""
    states = independent_subset(system.state_generators)
    effects = independent_subset(system.effect_generators)
    if len(states) != system.dim or len(effects) != system.dim:
        raise RankError(f"generators of {system.name!r} do not span its space")
    return states, effects


def effect_state_coefficients(states: np.ndarray, effects: np.ndarray) -> np.ndarray:
    """Matrix ``C`` with ``sum_ij C_ij w_i e_j^T = I`` for bases ``w`` and ``e``.

    With ``M_ij = e_j(w_i)`` this is ``C = (M^T)^-1``.
    """
    m = states @ effects.T
    return np.linalg.inv(m.T)


def build_pi_tl_effect_state(comp: CompositeSystem, bases_a=None, bases_b=None) -> np.ndarray:
    """``Pi_TL`` from local state and effect bases.

    ``Pi_TL = sum c^A_ij c^B_kl (w_i [x] w_k)(e_j [x] e_l)^T`` where each
    ``c`` inverts the local table of outcome probabilities.  The bases are
    taken from the generators unless given as ``(states, effects)`` pairs.
    """
    sa, ea = bases_a if bases_a is not None else _local_bases(comp.sys_a)
    sb, eb = bases_b if bases_b is not None else _local_bases(comp.sys_b)
    ca = effect_state_coefficients(sa, ea)
    cb = effect_state_coefficients(sb, eb)
    prod_s = product_states(comp, sa, sb)
    prod_e = product_effects(comp, ea, eb)
    coeff = np.kron(ca, cb)
    return prod_s.T @ coeff @ prod_e


def build_pi_tnl_hourglass(comp: CompositeSystem, product_basis=None, holistic_basis=None) -> np.ndarray:
    """``Pi_TNL = sum_k h_k h'_k^T`` over the holistic part of a split basis.

    The joint basis is a basis of ``AB_x`` followed by a basis ``h_k`` of
    ``H_S``; ``h'_k`` are the matching members of its dual basis.
    """
    if product_basis is None or holistic_basis is None:
        ab, h_state = tl_subspaces(comp)[0], holistic_subspaces(comp)[0]
        product_basis = ab.basis if product_basis is None else product_basis
        holistic_basis = h_state.basis if holistic_basis is None else holistic_basis
    product_basis = np.atleast_2d(product_basis).reshape(-1, comp.joint.dim)
    holistic_basis = np.atleast_2d(holistic_basis).reshape(-1, comp.joint.dim)
    dual = dual_basis(np.vstack([product_basis, holistic_basis]))
    k = len(product_basis)
    return holistic_basis.T @ dual[k:]


def build_pi_tnl_effect_state(comp: CompositeSystem, joint_states=None, joint_effects=None) -> np.ndarray:
    """``Pi_TNL`` as the joint identity in effect-state form minus ``Pi_TL``."""
    if joint_states is None or joint_effects is None:
        js, je = _local_bases(comp.joint)
        joint_states = js if joint_states is None else joint_states
        joint_effects = je if joint_effects is None else joint_effects
    c = effect_state_coefficients(np.asarray(joint_states), np.asarray(joint_effects))
    identity = np.asarray(joint_states).T @ c @ np.asarray(joint_effects)
    return identity - build_pi_tl_effect_state(comp)


@dataclass(frozen=True)
class ProjectorLawReport:
    composite: str
    checks: dict[str, float]
    tol: float = TOL_NUM

    @property
    def failed(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v <= self.tol]

    @property
    def passed(self) -> bool:
        return not self.failed

    def to_dict(self) -> dict:
        return {"composite": self.composite, "passed": self.passed, "failed": self.failed,
                "checks": dict(self.checks), "tol": self.tol}


def _maxabs(x) -> float:
    return float(np.max(np.abs(x), initial=0.0))


def verify_projector_laws(dec: TomographicDecomposition, tol: float = TOL_NUM) -> ProjectorLawReport:
    """Check the algebraic and operational laws of ``Pi_TL`` and ``Pi_TNL``.

    Every entry of the report is a worst-case residual; the suite passes if
    all are within ``tol``.
    """
    comp = dec.composite
    ptl, ptnl = dec.pi_tl, dec.pi_tnl
    n = comp.joint.dim
    u = comp.joint.unit_effect
    prod_s = product_states(comp, comp.sys_a.state_generators, comp.sys_b.state_generators)
    prod_e = product_effects(comp, comp.sys_a.effect_generators, comp.sys_b.effect_generators)
    joint_s = comp.joint.state_generators
    joint_e = comp.joint.effect_generators
    checks = {
        "tl_idempotent": _maxabs(ptl @ ptl - ptl),
        "tnl_idempotent": _maxabs(ptnl @ ptnl - ptnl),
        "complementary": _maxabs(ptl + ptnl - np.eye(n)),
        "unit_preserved_by_tl": _maxabs(u @ ptl - u),
        "unit_killed_by_tnl": _maxabs(u @ ptnl),
        "products_fixed_states": _maxabs(prod_s @ ptl.T - prod_s),
        "products_fixed_effects": _maxabs(prod_e @ ptl - prod_e),
        "tl_image_is_ab_tensor": _maxabs(ptl.T - dec.ab_tensor.project(ptl.T)),
        "tnl_image_is_h_state": _maxabs(ptnl.T - dec.h_state.project(ptnl.T)),
        "dual_tl_fixes_ab_tensor_dual": _maxabs(dec.ab_tensor_dual.basis @ ptl - dec.ab_tensor_dual.basis),
        "dual_tl_kills_h_effect": _maxabs(dec.h_effect.basis @ ptl),
        "dual_tnl_fixes_h_effect": _maxabs(dec.h_effect.basis @ ptnl - dec.h_effect.basis),
        "dual_tnl_kills_ab_tensor_dual": _maxabs(dec.ab_tensor_dual.basis @ ptnl),
        "statistics_match_decomposition": _maxabs(
            joint_e @ joint_s.T - (joint_e @ ptl @ joint_s.T + joint_e @ ptnl @ joint_s.T)
        ),
    }
    # A nonzero state never has a vanishing product part, since u(Pi_TL w) = u(w).
    norms = u @ (ptl @ joint_s.T)
    full = u @ joint_s.T
    checks["tl_faithful_on_states"] = _maxabs(norms - full)
    # Pi_TNL(w) = 0 exactly when w lies in AB_x.
    tnl_zero = np.max(np.abs(joint_s @ ptnl.T), axis=1, initial=0.0) <= tol
    in_ab = np.array([dec.ab_tensor.residual(w) <= tol for w in joint_s])
    checks["tnl_kernel_is_ab_tensor"] = float(np.sum(tnl_zero != in_ab))
    # A statistic changes under Pi_TL only if both holistic parts are nonzero.
    change = np.abs(joint_e @ ptl @ joint_s.T - joint_e @ joint_s.T)
    tnl_w = np.max(np.abs(joint_s @ ptnl.T), axis=1, initial=0.0) <= tol
    tnl_e = np.max(np.abs(joint_e @ ptnl), axis=1, initial=0.0) <= tol
    bad = (change > tol) & (tnl_w[None, :] | tnl_e[:, None])
    worst = float(change[bad].max(initial=0.0))
    checks["statistic_change_needs_both_holistic"] = worst
    return ProjectorLawReport(comp.name, checks, tol)


def splitting_inner_product(dec: TomographicDecomposition) -> np.ndarray:
    """Gram matrix of an inner product making ``AB_x`` and ``H_S`` orthogonal.

    ``<v, w> = <Pi_TL v, Pi_TL w> + <Pi_TNL v, Pi_TNL w>`` in the standard
    coordinates, so the Gram matrix is
    ``Pi_TL^T Pi_TL + Pi_TNL^T Pi_TNL``.  When the two subspaces are already
    orthogonal this is the identity.
    """
    return dec.pi_tl.T @ dec.pi_tl + dec.pi_tnl.T @ dec.pi_tnl


def riesz_holistic_effects(dec: TomographicDecomposition, gram: np.ndarray | None = None) -> Subspace:
    """Image of ``H_S`` under the Riesz map ``h -> G h`` of the splitting inner product.

    The image coincides with ``H_E``.
    """
    gram = splitting_inner_product(dec) if gram is None else gram
    n = dec.composite.joint.dim
    if dec.h_state.dim == 0:
        return Subspace(np.zeros((0, n)), n)
    return span_basis(dec.h_state.basis @ gram.T, ambient_dim=n)


def ab_tensor_plus_h_state(dec: TomographicDecomposition) -> Subspace:
    return sum_subspace(dec.ab_tensor, dec.h_state)
