"""Real linear-algebra primitives used throughout the package.

Vectors are 1-D float arrays and linear maps are 2-D float arrays acting by
left multiplication.  A :class:`Subspace` stores an orthonormal basis as the
rows of a matrix so that spans, annihilators and projectors can be compared
in a basis-independent way.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ContractError, DecompositionError, DimensionMismatch, RankError

TOL_RANK = 1e-10
TOL_NUM = 1e-9
TOL_PSD = 1e-9
TOL_LP = 1e-8

# Pivot threshold inside the simplex tableau.
_PIVOT_TOL = 1e-12


@dataclass(frozen=True)
class Subspace:
    """Linear subspace of R^n given by an orthonormal row basis.

    Attributes
    ----------
    basis : numpy.ndarray
        Array of shape ``(k, n)`` with orthonormal rows.
    ambient_dim : int
        The dimension ``n`` of the ambient space.
    """

    basis: np.ndarray
    ambient_dim: int

    def __post_init__(self):
        basis = np.asarray(self.basis, dtype=float).reshape(-1, self.ambient_dim)
        basis.setflags(write=False)
        object.__setattr__(self, "basis", basis)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def project(self, v: np.ndarray) -> np.ndarray:
        """Orthogonal projection of ``v`` (or of the rows of ``v``) onto the subspace."""
        v = np.asarray(v, dtype=float)
        return (v @ self.basis.T) @ self.basis

    def contains(self, v: np.ndarray, tol: float = TOL_NUM) -> bool:
        """Return True when ``v`` lies in the subspace up to ``tol`` (max-norm)."""
        v = np.asarray(v, dtype=float)
        return bool(np.max(np.abs(v - self.project(v)), initial=0.0) <= tol)

    def residual(self, v: np.ndarray) -> float:
        v = np.asarray(v, dtype=float)
        return float(np.max(np.abs(v - self.project(v)), initial=0.0))

    def equals(self, other: "Subspace", tol: float = TOL_NUM) -> bool:
        """Span equality."""
        if self.ambient_dim != other.ambient_dim or self.dim != other.dim:
            return False
        return all(other.contains(b, tol) for b in self.basis)


def zero_subspace(n: int) -> Subspace:
    return Subspace(np.zeros((0, n)), n)


def _as_rows(vectors) -> np.ndarray:
    if isinstance(vectors, np.ndarray):
        if vectors.ndim == 1:
            return vectors.reshape(1, -1).astype(float)
        if vectors.ndim != 2:
            raise DimensionMismatch("expected a list of vectors or a 2-D array")
        return vectors.astype(float)
    rows = [np.asarray(v, dtype=float).ravel() for v in vectors]
    if not rows:
        return np.zeros((0, 0))
    lengths = {r.size for r in rows}
    if len(lengths) != 1:
        raise DimensionMismatch(f"vectors of mixed dimension {sorted(lengths)}")
    return np.vstack(rows)


def span_basis(vectors, ambient_dim: int | None = None, tol: float = TOL_RANK) -> Subspace:
    """Orthonormal basis of the span of ``vectors``.

    Column-pivoted Gram-Schmidt (with one re-orthogonalisation pass): at each
    step the remaining vector of largest residual norm is taken, ties going
    to the lowest index, so the result is deterministic.

    Parameters
    ----------
    vectors : sequence of array_like or numpy.ndarray
        Vectors as rows.  An empty collection yields the zero subspace, which
        requires ``ambient_dim``.
    ambient_dim : int, optional
        Ambient dimension, needed only for empty input.
    tol : float
        Residual norms at or below ``tol * max(1, largest input norm)`` are
        treated as zero.

    Returns
    -------
    Subspace
    """
    rows = _as_rows(vectors)
    if rows.shape[0] == 0:
        if ambient_dim is None and rows.shape[1] == 0:
            raise DimensionMismatch("ambient_dim is required for an empty vector list")
        return zero_subspace(ambient_dim if ambient_dim is not None else rows.shape[1])
    n = rows.shape[1]
    if ambient_dim is not None and ambient_dim != n:
        raise DimensionMismatch(f"vectors have dimension {n}, expected {ambient_dim}")
    scale = max(1.0, float(np.max(np.linalg.norm(rows, axis=1))))
    threshold = tol * scale
    residual = rows.copy()
    basis = []
    for _ in range(min(rows.shape)):
        norms = np.linalg.norm(residual, axis=1)
        j = int(np.argmax(norms))
        if norms[j] <= threshold:
            break
        q = residual[j] / norms[j]
        for b in basis:
            q = q - (q @ b) * b
        q /= np.linalg.norm(q)
        basis.append(q)
        residual = residual - np.outer(residual @ q, q)
        residual[j] = 0.0
    return Subspace(np.array(basis).reshape(-1, n), n)


def rank(vectors, tol: float = TOL_RANK) -> int:
    rows = _as_rows(vectors)
    if rows.shape[0] == 0:
        return 0
    return span_basis(rows, tol=tol).dim


def independent_subset(vectors, tol: float = TOL_RANK) -> np.ndarray:
    """Greedy maximal linearly independent subset of ``vectors``, in order."""
    rows = _as_rows(vectors)
    n = rows.shape[1]
    scale = max(1.0, float(np.max(np.linalg.norm(rows, axis=1), initial=0.0)))
    q = np.zeros((0, n))
    chosen = []
    for k, r in enumerate(rows):
        resid = r - (q @ r) @ q
        resid = resid - (q @ resid) @ q
        norm = np.linalg.norm(resid)
        if norm > tol * scale:
            q = np.vstack([q, resid / norm])
            chosen.append(k)
            if len(chosen) == n:
                break
    return rows[chosen].reshape(-1, n)


def sum_subspace(*subspaces: Subspace) -> Subspace:
    n = subspaces[0].ambient_dim
    if any(s.ambient_dim != n for s in subspaces):
        raise DimensionMismatch("subspaces live in different ambient spaces")
    return span_basis(np.vstack([s.basis for s in subspaces]), ambient_dim=n)


def annihilator(sub: Subspace, tol: float = TOL_RANK) -> Subspace:
    """Functionals vanishing on ``sub``, under the dot-product pairing.

    Computed from the SVD of the basis matrix.  The sign of each returned
    vector is fixed so that its largest-magnitude entry is positive.
    """
    n = sub.ambient_dim
    if sub.dim == 0:
        return Subspace(np.eye(n), n)
    _, s, vt = np.linalg.svd(sub.basis, full_matrices=True)
    r = int(np.sum(s > tol * max(1.0, s[0])))
    null = vt[r:].copy()
    for i, row in enumerate(null):
        k = int(np.argmax(np.abs(row)))
        if row[k] < 0:
            null[i] = -row
    # Clean up entries at rounding level so axis-aligned results come out exact.
    null[np.abs(null) < 1e-15] = 0.0
    return Subspace(null, n)


def oblique_projector(image: Subspace, kernel: Subspace, tol: float = TOL_RANK) -> np.ndarray:
    """Projector onto ``image`` along ``kernel``.

    Raises
    ------
    DecompositionError
        If the two subspaces are not complementary in the ambient space.
    """
    n = image.ambient_dim
    if kernel.ambient_dim != n:
        raise DimensionMismatch("image and kernel live in different ambient spaces")
    if image.dim + kernel.dim != n:
        raise DecompositionError(
            f"dimensions {image.dim} + {kernel.dim} do not add up to {n}"
        )
    m = np.vstack([image.basis, kernel.basis]).T
    s = np.linalg.svd(m, compute_uv=False)
    if n and s[-1] <= tol * max(1.0, s[0]):
        raise DecompositionError("image and kernel intersect non-trivially")
    minv = np.linalg.inv(m)
    return image.basis.T @ minv[: image.dim]


def dual_basis(basis, tol: float = TOL_RANK) -> np.ndarray:
    """Rows ``t_k`` with ``t_k . v_j = delta_kj`` for the rows ``v_j`` of ``basis``."""
    v = _as_rows(basis)
    if v.shape[0] != v.shape[1]:
        raise RankError(f"{v.shape[0]} vectors cannot form a basis of R^{v.shape[1]}")
    s = np.linalg.svd(v, compute_uv=False)
    if v.size and s[-1] <= tol * max(1.0, s[0]):
        raise RankError("vectors are linearly dependent")
    return np.linalg.inv(v).T


def min_eigenvalue_symmetric(mat: np.ndarray, tol: float = TOL_NUM) -> float | np.ndarray:
    """Smallest eigenvalue of a real symmetric matrix, or of a stack of them.

    Raises
    ------
    ContractError
        If the input is not symmetric within ``tol``.
    """
    a = np.asarray(mat, dtype=float)
    if a.ndim < 2 or a.shape[-1] != a.shape[-2]:
        raise DimensionMismatch("expected square matrices")
    asym = np.max(np.abs(a - np.swapaxes(a, -1, -2)), initial=0.0)
    if asym > tol * max(1.0, float(np.max(np.abs(a), initial=0.0))):
        raise ContractError(f"matrix is not symmetric (asymmetry {asym:.3g})")
    w = np.linalg.eigvalsh(0.5 * (a + np.swapaxes(a, -1, -2)))
    low = w[..., 0]
    return float(low) if low.ndim == 0 else low


@dataclass(frozen=True)
class MembershipResult:
    """Outcome of a convex or conic membership LP.

    Attributes
    ----------
    feasible : bool
    weights : numpy.ndarray or None
        Non-negative coefficients on the generators when feasible.
    residual : float
        Max-norm reconstruction error of the weights (or the Phase-I value
        when infeasible).
    witness : numpy.ndarray or None
        When infeasible, a functional ``y`` on the constraint rows with
        ``y . column <= 0`` for every generator column and ``y . rhs > 0``.
    """

    feasible: bool
    weights: np.ndarray | None
    residual: float
    witness: np.ndarray | None = field(default=None, repr=False)


def _phase_one(a: np.ndarray, b: np.ndarray, max_iter: int):
    """Phase-I simplex with Bland's rule for ``a x = b, x >= 0``.

    Returns the basis (column indices, artificials numbered from ``n``) and
    the final Phase-I objective.
    """
    m, n = a.shape
    flip = np.where(b < 0, -1.0, 1.0)
    a = a * flip[:, None]
    b = b * flip
    tab = np.zeros((m + 1, n + m + 1))
    tab[:m, :n] = a
    tab[:m, n : n + m] = np.eye(m)
    tab[:m, -1] = b
    # Cost row holds reduced costs; last entry is minus the objective.
    tab[m, :n] = -a.sum(axis=0)
    tab[m, -1] = -b.sum()
    basis = list(range(n, n + m))
    for _ in range(max_iter):
        entering = np.flatnonzero(tab[m, :-1] < -_PIVOT_TOL)
        if entering.size == 0:
            break
        j = int(entering[0])
        col = tab[:m, j]
        rows = np.flatnonzero(col > _PIVOT_TOL)
        if rows.size == 0:
            # Cannot happen in Phase I (objective is bounded below by zero).
            break
        ratios = tab[rows, -1] / col[rows]
        best = ratios.min()
        ties = rows[ratios <= best + 1e-14 * max(1.0, abs(best))]
        i = int(min(ties, key=lambda r: basis[r]))
        tab[i] /= tab[i, j]
        others = np.arange(m + 1) != i
        tab[others] -= np.outer(tab[others, j], tab[i])
        basis[i] = j
    else:
        raise ContractError("simplex iteration limit reached")
    return basis, -tab[m, -1], flip


def _lp_membership(a: np.ndarray, b: np.ndarray, tol: float, max_iter: int) -> MembershipResult:
    m, n = a.shape
    if n == 0:
        ok = bool(np.max(np.abs(b), initial=0.0) <= tol)
        return MembershipResult(ok, np.zeros(0) if ok else None, float(np.max(np.abs(b), initial=0.0)))
    basis, objective, flip = _phase_one(a, b, max_iter)
    support = sorted(j for j in basis if j < n)
    weights = np.zeros(n)
    if support:
        # Re-solve the basic system directly to remove accumulated pivoting error.
        sol, *_ = np.linalg.lstsq(a[:, support], b, rcond=None)
        weights[support] = sol
    weights[np.abs(weights) < 1e-14] = 0.0
    residual = float(np.max(np.abs(a @ weights - b), initial=0.0))
    if objective <= tol and residual <= tol and weights.min(initial=0.0) >= -tol:
        return MembershipResult(True, np.clip(weights, 0.0, None), residual)
    # Duals of the final basis: B^T y = c_B with c = 1 on artificials.
    full = np.hstack([a * flip[:, None], np.eye(m)])
    cost = np.array([1.0 if j >= n else 0.0 for j in basis])
    y, *_ = np.linalg.lstsq(full[:, basis].T, cost, rcond=None)
    return MembershipResult(False, None, float(objective), witness=y * flip)


def convex_membership(point, generators, tol: float = TOL_LP, max_iter: int = 20000) -> MembershipResult:
    """Decide whether ``point`` is a convex combination of ``generators``.

    Solved with a Phase-I simplex using Bland's anti-cycling rule.

    Parameters
    ----------
    point : array_like, shape (n,)
    generators : array_like, shape (k, n)
        Generators as rows.
    tol : float
        Feasibility tolerance.

    Returns
    -------
    MembershipResult
        ``weights`` sum to one.  The ``witness`` of an infeasible result acts
        on ``(point, 1)``: it is non-positive on every ``(g, 1)`` and
        positive on ``(point, 1)``.
    """
    x = np.asarray(point, dtype=float).ravel()
    g = _as_rows(generators)
    if g.shape[0] and g.shape[1] != x.size:
        raise DimensionMismatch(f"point has dimension {x.size}, generators {g.shape[1]}")
    a = np.vstack([g.T.reshape(x.size, -1), np.ones((1, g.shape[0]))])
    b = np.concatenate([x, [1.0]])
    return _lp_membership(a, b, tol, max_iter)


def conic_membership(point, generators, tol: float = TOL_LP, max_iter: int = 20000) -> MembershipResult:
    """Decide whether ``point`` is a non-negative combination of ``generators``."""
    x = np.asarray(point, dtype=float).ravel()
    g = _as_rows(generators)
    if g.shape[0] and g.shape[1] != x.size:
        raise DimensionMismatch(f"point has dimension {x.size}, generators {g.shape[1]}")
    return _lp_membership(g.T.reshape(x.size, -1), x, tol, max_iter)
