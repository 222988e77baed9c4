"""Systems, composites and the composition axioms.

A system is described in a fixed coordinate space ``R^d``.  States and
effects both live there and the outcome probability is the dot product
``e(w) = e . w``.  Membership in the state and effect sets is decided by a
named predicate (a *cone* in the registry below) when one is registered,
otherwise by convex membership against the generators together with zero.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from .errors import ContractError, DimensionMismatch, SteeringClosureError
from .linalg import TOL_NUM, convex_membership, rank, span_basis

SCHEMA_TAG = "gpt-tomo/1"

# name -> function(system, rows) returning a non-negative violation per row
CONES: dict[str, Callable[["GptSystem", np.ndarray], np.ndarray]] = {}


def register_cone(name: str):
    """Decorator registering a membership predicate under ``name``."""

    def wrap(fn):
        CONES[name] = fn
        return fn

    return wrap


@register_cone("simplex")
def _simplex_violation(system, rows):
    return np.maximum.reduce(
        [np.zeros(len(rows)), -rows.min(axis=1), rows.sum(axis=1) - 1.0]
    )


@register_cone("box")
def _box_violation(system, rows):
    return np.maximum.reduce(
        [np.zeros(len(rows)), -rows.min(axis=1), rows.max(axis=1) - 1.0]
    )


def _frozen(a, ndim: int) -> np.ndarray:
    arr = np.array(a, dtype=float)
    if ndim == 2:
        arr = arr.reshape(-1, arr.shape[-1] if arr.size else 0)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class GptSystem:
    """A single GPT system.

    Attributes
    ----------
    name : str
    dim : int
        Dimension of the coordinate space.
    state_generators : numpy.ndarray
        Rows spanning the state space, shape ``(k, dim)``.  Their convex hull
        with zero is the subnormalised state set unless ``state_cone`` names
        a predicate.
    effect_generators : numpy.ndarray
        Rows spanning the effect space, shape ``(m, dim)``.
    unit_effect : numpy.ndarray
    state_cone, effect_cone : str, optional
        Keys into :data:`CONES`.
    metadata : dict
        JSON-serialisable extra data read by the registered predicates.
    """

    name: str
    dim: int
    state_generators: np.ndarray
    effect_generators: np.ndarray
    unit_effect: np.ndarray
    state_cone: str | None = None
    effect_cone: str | None = None
    metadata: Mapping = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "state_generators", _frozen(self.state_generators, 2))
        object.__setattr__(self, "effect_generators", _frozen(self.effect_generators, 2))
        object.__setattr__(self, "unit_effect", _frozen(self.unit_effect, 1))
        for label, arr in (
            ("state_generators", self.state_generators),
            ("effect_generators", self.effect_generators),
        ):
            if arr.shape[1] != self.dim:
                raise DimensionMismatch(f"{label} have dimension {arr.shape[1]}, expected {self.dim}")
        if self.unit_effect.shape != (self.dim,):
            raise DimensionMismatch("unit effect has the wrong dimension")
        for cone in (self.state_cone, self.effect_cone):
            if cone is not None and cone not in CONES:
                raise ContractError(f"unknown membership predicate {cone!r}")

    def state_violation(self, rows) -> np.ndarray:
        """Distance-like violation of membership in the subnormalised state set."""
        rows = np.atleast_2d(np.asarray(rows, dtype=float))
        if self.state_cone is not None:
            return CONES[self.state_cone](self, rows)
        gens = np.vstack([self.state_generators, np.zeros(self.dim)])
        return _lp_violation(rows, gens)

    def effect_violation(self, rows) -> np.ndarray:
        rows = np.atleast_2d(np.asarray(rows, dtype=float))
        if self.effect_cone is not None:
            return CONES[self.effect_cone](self, rows)
        gens = np.vstack([self.effect_generators, np.zeros(self.dim)])
        return _lp_violation(rows, gens)

    def is_state(self, v, normalized: bool = False, tol: float = TOL_NUM) -> bool:
        v = np.asarray(v, dtype=float)
        if v.shape != (self.dim,):
            raise DimensionMismatch(f"state has shape {v.shape}, expected ({self.dim},)")
        if normalized and abs(self.unit_effect @ v - 1.0) > tol:
            return False
        return bool(self.state_violation(v)[0] <= tol)

    def is_effect(self, v, tol: float = TOL_NUM) -> bool:
        v = np.asarray(v, dtype=float)
        if v.shape != (self.dim,):
            raise DimensionMismatch(f"effect has shape {v.shape}, expected ({self.dim},)")
        return bool(self.effect_violation(v)[0] <= tol)

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA_TAG,
            "kind": "system",
            "name": self.name,
            "dim": self.dim,
            "state_generators": self.state_generators.tolist(),
            "effect_generators": self.effect_generators.tolist(),
            "unit_effect": self.unit_effect.tolist(),
            "state_cone": self.state_cone,
            "effect_cone": self.effect_cone,
            "metadata": dict(self.metadata),
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "GptSystem":
        _check_tag(data, "system")
        return cls(
            name=data["name"],
            dim=int(data["dim"]),
            state_generators=np.array(data["state_generators"], dtype=float).reshape(-1, data["dim"]),
            effect_generators=np.array(data["effect_generators"], dtype=float).reshape(-1, data["dim"]),
            unit_effect=data["unit_effect"],
            state_cone=data.get("state_cone"),
            effect_cone=data.get("effect_cone"),
            metadata=data.get("metadata", {}),
        )


def _lp_violation(rows, gens):
    out = np.zeros(len(rows))
    for i, r in enumerate(rows):
        res = convex_membership(r, gens)
        out[i] = 0.0 if res.feasible else max(res.residual, 2 * TOL_NUM)
    return out


def _check_tag(data: Mapping, kind: str):
    if data.get("schema") != SCHEMA_TAG:
        raise ContractError(f"expected schema tag {SCHEMA_TAG!r}, got {data.get('schema')!r}")
    if data.get("kind") != kind:
        raise ContractError(f"expected a {kind!r} document, got {data.get('kind')!r}")


@dataclass(frozen=True)
class CompositeSystem:
    """A bipartite composite of two systems.

    Attributes
    ----------
    name : str
    sys_a, sys_b : GptSystem
        Local systems.
    joint : GptSystem
        The global system.
    state_product, effect_product : numpy.ndarray
        Shape ``(d_AB, d_A * d_B)``; they send ``kron(w, v)`` to ``w [x] v``
        and ``kron(e, f)`` to ``e [x] f``.
    separability : str, optional
        Name of the separability decision route (see
        :mod:`gpt_tomo.entanglement`).
    measurements : dict
        Named joint measurements, each an array of effects as rows.
    metadata : dict
    """

    name: str
    sys_a: GptSystem
    sys_b: GptSystem
    joint: GptSystem
    state_product: np.ndarray
    effect_product: np.ndarray
    separability: str | None = None
    measurements: Mapping[str, np.ndarray] = field(default_factory=dict)
    metadata: Mapping = field(default_factory=dict)

    def __post_init__(self):
        shape = (self.joint.dim, self.sys_a.dim * self.sys_b.dim)
        for label in ("state_product", "effect_product"):
            arr = np.array(getattr(self, label), dtype=float)
            if arr.size != shape[0] * shape[1]:
                raise DimensionMismatch(f"{label} must have shape {shape}")
            arr = arr.reshape(shape)
            arr.setflags(write=False)
            object.__setattr__(self, label, arr)
        meas = {}
        for key, effects in self.measurements.items():
            arr = _frozen(effects, 2)
            if arr.shape[1] != self.joint.dim:
                raise DimensionMismatch(f"measurement {key!r} has the wrong dimension")
            meas[key] = arr
        object.__setattr__(self, "measurements", meas)

    @property
    def dims(self) -> tuple[int, int, int]:
        return self.sys_a.dim, self.sys_b.dim, self.joint.dim

    def local(self, side: str) -> GptSystem:
        return {"a": self.sys_a, "b": self.sys_b}[_side(side)]

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA_TAG,
            "kind": "composite",
            "name": self.name,
            "sys_a": self.sys_a.to_dict(),
            "sys_b": self.sys_b.to_dict(),
            "joint": self.joint.to_dict(),
            "state_product": self.state_product.tolist(),
            "effect_product": self.effect_product.tolist(),
            "separability": self.separability,
            "measurements": {k: v.tolist() for k, v in self.measurements.items()},
            "metadata": dict(self.metadata),
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "CompositeSystem":
        _check_tag(data, "composite")
        joint = GptSystem.from_dict(data["joint"])
        return cls(
            name=data["name"],
            sys_a=GptSystem.from_dict(data["sys_a"]),
            sys_b=GptSystem.from_dict(data["sys_b"]),
            joint=joint,
            state_product=data["state_product"],
            effect_product=data["effect_product"],
            separability=data.get("separability"),
            measurements={
                k: np.array(v, dtype=float).reshape(-1, joint.dim)
                for k, v in data.get("measurements", {}).items()
            },
            metadata=data.get("metadata", {}),
        )


def to_json(obj: GptSystem | CompositeSystem, **kwargs) -> str:
    return json.dumps(obj.to_dict(), **kwargs)


def from_json(text: str) -> GptSystem | CompositeSystem:
    data = json.loads(text)
    kind = data.get("kind")
    if kind == "system":
        return GptSystem.from_dict(data)
    if kind == "composite":
        return CompositeSystem.from_dict(data)
    raise ContractError(f"unknown document kind {kind!r}")


def _side(side: str) -> str:
    side = side.lower()
    if side not in ("a", "b"):
        raise ContractError(f"side must be 'a' or 'b', got {side!r}")
    return side


def _pairs(rows_a, rows_b) -> np.ndarray:
    a = np.atleast_2d(np.asarray(rows_a, dtype=float))
    b = np.atleast_2d(np.asarray(rows_b, dtype=float))
    return np.einsum("ia,jb->ijab", a, b).reshape(len(a) * len(b), -1)


def boxtimes_state(comp: CompositeSystem, w, v) -> np.ndarray:
    """The product state ``w [x] v``."""
    w, v = np.asarray(w, dtype=float), np.asarray(v, dtype=float)
    if w.shape != (comp.sys_a.dim,) or v.shape != (comp.sys_b.dim,):
        raise DimensionMismatch("local vectors do not match the composite")
    return comp.state_product @ np.kron(w, v)


def boxtimes_effect(comp: CompositeSystem, e, f) -> np.ndarray:
    """The product effect ``e [x] f``."""
    e, f = np.asarray(e, dtype=float), np.asarray(f, dtype=float)
    if e.shape != (comp.sys_a.dim,) or f.shape != (comp.sys_b.dim,):
        raise DimensionMismatch("local vectors do not match the composite")
    return comp.effect_product @ np.kron(e, f)


def product_states(comp: CompositeSystem, rows_a, rows_b) -> np.ndarray:
    """All products ``w_i [x] v_j`` as rows, ``i`` outermost."""
    return _pairs(rows_a, rows_b) @ comp.state_product.T


def product_effects(comp: CompositeSystem, rows_a, rows_b) -> np.ndarray:
    return _pairs(rows_a, rows_b) @ comp.effect_product.T


def _require_complete(system: GptSystem, generators: np.ndarray, what: str):
    if (rank(generators) if len(generators) else 0) != system.dim:
        raise SteeringClosureError(
            f"the {what} generators of {system.name!r} do not span its coordinate space, "
            "so conditional vectors are not determined locally"
        )


def conditional_state(comp: CompositeSystem, omega, effect, keep: str = "a") -> np.ndarray:
    """Unnormalised state left on side ``keep`` after ``effect`` clicks on the other side.

    The result ``w`` satisfies ``e . w = (e [x] effect)(omega)`` for every
    local effect ``e`` (or the mirror statement when ``keep='b'``).

    Raises
    ------
    SteeringClosureError
        If the kept system's effects are not tomographically complete, so the
        conditional state is not determined by local statistics.
    """
    keep = _side(keep)
    kept = comp.local(keep)
    _require_complete(kept, kept.effect_generators, "effect")
    wmat = (comp.effect_product.T @ np.asarray(omega, dtype=float)).reshape(comp.sys_a.dim, comp.sys_b.dim)
    effect = np.asarray(effect, dtype=float)
    return wmat @ effect if keep == "a" else wmat.T @ effect


def conditional_effect(comp: CompositeSystem, effect, state, keep: str = "a") -> np.ndarray:
    """Effect on side ``keep`` induced by preparing ``state`` on the other side.

    The result ``e`` satisfies ``e . w = effect(w [x] state)`` for every local
    state ``w`` (mirrored for ``keep='b'``).
    """
    keep = _side(keep)
    kept = comp.local(keep)
    _require_complete(kept, kept.state_generators, "state")
    vmat = (comp.state_product.T @ np.asarray(effect, dtype=float)).reshape(comp.sys_a.dim, comp.sys_b.dim)
    state = np.asarray(state, dtype=float)
    return vmat @ state if keep == "a" else vmat.T @ state


def _conditional_states_batch(comp, omegas, effects, keep):
    """Rows ``conditional_state(omega_i, effect_j)`` for all pairs."""
    wm = (np.atleast_2d(omegas) @ comp.effect_product).reshape(-1, comp.sys_a.dim, comp.sys_b.dim)
    effects = np.atleast_2d(effects)
    if keep == "a":
        out = np.einsum("nab,fb->nfa", wm, effects)
    else:
        out = np.einsum("nab,fa->nfb", wm, effects)
    return out.reshape(-1, out.shape[-1])


def _conditional_effects_batch(comp, joint_effects, states, keep):
    vm = (np.atleast_2d(joint_effects) @ comp.state_product).reshape(-1, comp.sys_a.dim, comp.sys_b.dim)
    states = np.atleast_2d(states)
    if keep == "a":
        out = np.einsum("nab,sb->nsa", vm, states)
    else:
        out = np.einsum("nab,sa->nsb", vm, states)
    return out.reshape(-1, out.shape[-1])


@dataclass(frozen=True)
class ItemCheck:
    """Outcome of one axiom item.

    Attributes
    ----------
    item : str
    passed : bool
    worst_residual : float
    checks : dict
        Sub-check name to worst residual.
    """

    item: str
    passed: bool
    worst_residual: float
    checks: Mapping[str, float]

    def to_dict(self) -> dict:
        return {
            "item": self.item,
            "passed": self.passed,
            "worst_residual": self.worst_residual,
            "checks": dict(self.checks),
        }


@dataclass(frozen=True)
class ValidationReport:
    composite: str
    items: tuple[ItemCheck, ...]

    @property
    def passed(self) -> bool:
        return all(item.passed for item in self.items)

    @property
    def failed_items(self) -> list[str]:
        return [item.item for item in self.items if not item.passed]

    def __getitem__(self, key: str) -> ItemCheck:
        for item in self.items:
            if item.item == key:
                return item
        raise KeyError(key)

    def to_dict(self) -> dict:
        return {
            "composite": self.composite,
            "passed": self.passed,
            "failed_items": self.failed_items,
            "items": [item.to_dict() for item in self.items],
        }


def _max(x) -> float:
    return float(np.max(x, initial=0.0))


def validate_composition(comp: CompositeSystem, tol: float = TOL_NUM) -> ValidationReport:
    """Check the three composition axioms on the generators of ``comp``.

    * ``item1``: products of local states (effects) are joint states
      (effects) and product effects factorise on product states.
    * ``item2``: the joint unit is the product of the local units.
    * ``item3``: steering closure, i.e. conditional states and effects on
      either side, computed from joint generators and local generators, are
      valid local states and effects.
    """
    a, b, ab = comp.sys_a, comp.sys_b, comp.joint
    prod_s = product_states(comp, a.state_generators, b.state_generators)
    prod_e = product_effects(comp, a.effect_generators, b.effect_generators)
    local_table = np.kron(a.effect_generators @ a.state_generators.T, b.effect_generators @ b.state_generators.T)
    item1 = {
        "product_states_valid": _max(ab.state_violation(prod_s)),
        "product_effects_valid": _max(ab.effect_violation(prod_e)),
        "product_factorisation": _max(np.abs(prod_e @ prod_s.T - local_table)),
    }
    unit_prod = boxtimes_effect(comp, a.unit_effect, b.unit_effect)
    item2 = {"unit_product": _max(np.abs(unit_prod - ab.unit_effect))}
    item3 = {}
    for keep, kept, other in (("a", a, b), ("b", b, a)):
        try:
            _require_complete(kept, kept.effect_generators, "effect")
            _require_complete(kept, kept.state_generators, "state")
            states = _conditional_states_batch(comp, ab.state_generators, other.effect_generators, keep)
            effects = _conditional_effects_batch(comp, ab.effect_generators, other.state_generators, keep)
            item3[f"conditional_states_{keep}"] = _max(kept.state_violation(states))
            item3[f"conditional_effects_{keep}"] = _max(kept.effect_violation(effects))
        except SteeringClosureError:
            item3[f"conditional_states_{keep}"] = float("inf")
            item3[f"conditional_effects_{keep}"] = float("inf")
    items = tuple(
        ItemCheck(name, _max(list(checks.values())) <= tol, _max(list(checks.values())), checks)
        for name, checks in (("item1", item1), ("item2", item2), ("item3", item3))
    )
    return ValidationReport(comp.name, items)


def validate_system(system: GptSystem, tol: float = TOL_NUM) -> dict:
    """Basic invariants of a single system.

    Returns a mapping of check name to worst residual; all should be within
    ``tol``.
    """
    return {
        "state_generators_valid": _max(system.state_violation(system.state_generators)),
        "effect_generators_valid": _max(system.effect_violation(system.effect_generators)),
        "unit_is_effect": _max(system.effect_violation(system.unit_effect)),
        "states_span": float(abs(rank(system.state_generators) - system.dim)),
        "effects_span": float(abs(rank(system.effect_generators) - system.dim)),
        "probabilities_in_range": _max(
            np.maximum(-(system.effect_generators @ system.state_generators.T),
                       system.effect_generators @ system.state_generators.T - 1.0)
        ),
    }


def is_tomographically_local(comp: CompositeSystem) -> bool:
    """True when products of local states span the whole joint space."""
    prod_s = product_states(comp, comp.sys_a.state_generators, comp.sys_b.state_generators)
    return span_basis(prod_s, ambient_dim=comp.joint.dim).dim == comp.joint.dim
