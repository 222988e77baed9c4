"""Classical probability theory and the bilocal classical theory.

In the bilocal classical theory two bits compose into an eight-level
classical system whose levels are triples ``(i, j, s)`` with ``s`` a hidden
sign.  The product of local point masses spreads evenly over both signs,
so the sign is invisible to local measurements and their combinations.
"""

from __future__ import annotations

import numpy as np

from ..errors import ContractError
from ..model import CompositeSystem, GptSystem

SIGNS = ("+", "-")


def make_classical(n: int) -> GptSystem:
    """Classical system with ``n`` perfectly distinguishable outcomes.

    States are sub-normalised probability vectors and effects are vectors in
    the unit box ``[0, 1]^n``.  The effect generators are the indicator
    functionals plus the unit.
    """
    if n < 1:
        raise ContractError("a classical system needs at least one level")
    eye = np.eye(n)
    return GptSystem(
        name=f"classical:{n}",
        dim=n,
        state_generators=eye,
        effect_generators=np.vstack([eye, np.ones(n)]),
        unit_effect=np.ones(n),
        state_cone="simplex",
        effect_cone="box",
        metadata={"represents": "classical"},
    )


def make_classical_pair(n: int, m: int | None = None) -> CompositeSystem:
    """Composite of classical systems, which is the ``n*m``-level classical system."""
    m = n if m is None else m
    a, b = make_classical(n), make_classical(m)
    joint = make_classical(n * m)
    prod = np.eye(n * m)
    return CompositeSystem(
        name=f"classical:{n}x{m}",
        sys_a=a,
        sys_b=b,
        joint=joint,
        state_product=prod,
        effect_product=prod,
        separability="lp",
    )


def bct_index(i: int, j: int, s: str | int) -> int:
    """Position of level ``(i, j, s)`` in the eight joint coordinates."""
    if isinstance(s, str):
        s = SIGNS.index(s)
    if i not in (0, 1) or j not in (0, 1) or s not in (0, 1):
        raise ContractError(f"invalid level {(i, j, s)!r}")
    return (2 * i + j) * 2 + s


def bct_level(i: int, j: int, s: str | int) -> np.ndarray:
    v = np.zeros(8)
    v[bct_index(i, j, s)] = 1.0
    return v


def make_bct_pair() -> CompositeSystem:
    """The bilocal classical composite of two bits.

    The joint system is the classical simplex over the eight levels
    ``(i, j, s)``.  Its effects are the full box ``[0, 1]^8``, whose
    generators are the eight indicators together with the products of local
    effect generators.
    """
    bit = make_classical(2)
    state_product = np.zeros((8, 4))
    effect_product = np.zeros((8, 4))
    for i in (0, 1):
        for j in (0, 1):
            for s in (0, 1):
                state_product[bct_index(i, j, s), 2 * i + j] = 0.5
                effect_product[bct_index(i, j, s), 2 * i + j] = 1.0
    lifts = (np.einsum("ia,jb->ijab", bit.effect_generators, bit.effect_generators)
             .reshape(-1, 4) @ effect_product.T)
    joint = GptSystem(
        name="bct",
        dim=8,
        state_generators=np.eye(8),
        effect_generators=np.vstack([np.eye(8), lifts]),
        unit_effect=np.ones(8),
        state_cone="simplex",
        effect_cone="box",
        metadata={"represents": "bct", "levels": [f"{i}{j}{s}" for i in (0, 1) for j in (0, 1) for s in SIGNS]},
    )
    sign_meas = np.array([
        sum(bct_level(i, j, s) for i in (0, 1) for j in (0, 1)) for s in SIGNS
    ])
    return CompositeSystem(
        name="bct",
        sys_a=bit,
        sys_b=bit,
        joint=joint,
        state_product=state_product,
        effect_product=effect_product,
        separability="lp",
        measurements={"sign": sign_meas, "levels": np.eye(8)},
    )


def bct_local_reversible(flip_bit: int, flip_sign: int, side: str = "a") -> np.ndarray:
    """Permutation ``(i, j, s) -> (i + x, j, s * (-1)^y)`` on the joint levels.

    With ``side='b'`` the bit flip acts on ``j`` instead.  Both the bit flip
    and the sign flip are local reversible transformations of the composite.
    """
    if side not in ("a", "b"):
        raise ContractError(f"side must be 'a' or 'b', got {side!r}")
    perm = np.zeros((8, 8))
    for i in (0, 1):
        for j in (0, 1):
            for s in (0, 1):
                ni, nj = (i ^ flip_bit, j) if side == "a" else (i, j ^ flip_bit)
                perm[bct_index(ni, nj, s ^ flip_sign), bct_index(i, j, s)] = 1.0
    return perm


def bct_quad_index(a: int, a2: int, b: int, b2: int, s_ab: int, s_a2b2: int, s_aa2: int) -> int:
    """Position of a level of the doubled bilocal composite ``AA'|BB'``.

    Signs are 0 for ``+`` and 1 for ``-``.  The ``BB'`` sign is not stored:
    it is the product of the other three.
    """
    return (((((a * 2 + a2) * 2 + b) * 2 + b2) * 2 + s_ab) * 2 + s_a2b2) * 2 + s_aa2


def _quad_levels():
    for a in (0, 1):
        for a2 in (0, 1):
            for b in (0, 1):
                for b2 in (0, 1):
                    for s_ab in (0, 1):
                        for s_a2b2 in (0, 1):
                            for s_aa2 in (0, 1):
                                yield a, a2, b, b2, s_ab, s_a2b2, s_aa2


def make_bct_quad() -> CompositeSystem:
    """Two bilocal-classical pairs ``AB`` and ``A'B'`` grouped as ``AA'|BB'``.

    Each of the four bit pairs ``AA'``, ``BB'``, ``AB`` and ``A'B'`` carries
    a hidden sign, subject to the parity rule
    ``s_BB' = s_AB * s_A'B' * s_AA'``, giving a 128-level classical joint
    system.  Both local systems are copies of the bilocal classical pair.
    A product of local levels ``(a, a', s)`` and ``(b, b', t)`` spreads
    evenly over the two sign assignments compatible with ``s`` and ``t``.
    The four-party extension is not canonical; this parity model is one
    consistent choice.
    """
    local = make_bct_pair().joint
    state_product = np.zeros((128, 64))
    effect_product = np.zeros((128, 64))
    for a, a2, b, b2, s_ab, s_a2b2, s_aa2 in _quad_levels():
        s_bb2 = s_ab ^ s_a2b2 ^ s_aa2
        row = bct_quad_index(a, a2, b, b2, s_ab, s_a2b2, s_aa2)
        col = bct_index(a, a2, s_aa2) * 8 + bct_index(b, b2, s_bb2)
        state_product[row, col] = 0.5
        effect_product[row, col] = 1.0
    lifts = (np.einsum("ia,jb->ijab", local.effect_generators, local.effect_generators)
             .reshape(-1, 64) @ effect_product.T)
    joint = GptSystem(
        name="bct-quad",
        dim=128,
        state_generators=np.eye(128),
        effect_generators=np.vstack([np.eye(128), lifts]),
        unit_effect=np.ones(128),
        state_cone="simplex",
        effect_cone="box",
        metadata={"represents": "bct-quad"},
    )
    return CompositeSystem(
        name="bct-quad",
        sys_a=local,
        sys_b=local,
        joint=joint,
        state_product=state_product,
        effect_product=effect_product,
        separability="lp",
    )


def bct_cross_matrix() -> np.ndarray:
    """Sends ``kron(w_AB, v_A'B')`` into the doubled composite.

    The ``AA'`` sign, which neither pair constrains, is uniform.
    """
    out = np.zeros((128, 64))
    for a, a2, b, b2, s_ab, s_a2b2, s_aa2 in _quad_levels():
        row = bct_quad_index(a, a2, b, b2, s_ab, s_a2b2, s_aa2)
        out[row, bct_index(a, b, s_ab) * 8 + bct_index(a2, b2, s_a2b2)] = 0.5
    return out
