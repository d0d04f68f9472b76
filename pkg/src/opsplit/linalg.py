"""Dense real linear algebra underpinning the operator calculus.

Vectors ("points") are 1-D float64 ndarrays and matrices are square 2-D
float64 ndarrays.  Everything works at desk scale (n <= 64) in double
precision; thresholds below are defaults and can be overridden per call.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch, RankDeficient, SingularMatrix

# Condition-number ceiling for solves and per-vector dependence threshold for
# orthonormalization; double-precision headroom for n <= 64.
COND_LIMIT = 1e12
DEPENDENCE_TOL = 1e-10
ORTHONORMALITY_TOL = 1e-12


def as_point(x, dim=None):
    """Validate and return ``x`` as a finite 1-D float64 vector."""
    v = np.asarray(x, dtype=float)
    if v.ndim != 1:
        raise DimensionMismatch(f"expected a 1-D vector, got shape {v.shape}")
    if dim is not None and v.shape[0] != dim:
        raise DimensionMismatch(f"expected dimension {dim}, got {v.shape[0]}")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector entries must be finite")
    return v


def as_square_matrix(m):
    """Validate and return ``m`` as a finite square 2-D float64 matrix."""
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    return a


def frozen(a):
    """Return a read-only float64 copy of ``a``."""
    out = np.array(a, dtype=float)
    out.setflags(write=False)
    return out


def solve_linear(matrix, rhs, cond_limit=COND_LIMIT):
    """Solve ``matrix @ y = rhs`` for ``y``.

    Raises
    ------
    SingularMatrix
        If the 2-norm condition estimate exceeds ``cond_limit``.
    """
    m = as_square_matrix(matrix)
    b = as_point(rhs, dim=m.shape[0])
    cond = np.linalg.cond(m)
    if not np.isfinite(cond) or cond > cond_limit:
        raise SingularMatrix(f"condition estimate {cond:.3e} exceeds {cond_limit:.1e}")
    return np.linalg.solve(m, b)


class SubspaceBasis:
    """An orthonormal basis for a linear subspace of R^n.

    ``vectors`` is a read-only (k, n) array whose rows are pairwise
    orthonormal; k = 0 encodes the trivial subspace.
    """

    def __init__(self, dim, vectors):
        self.dim = int(dim)
        if self.dim < 1:
            raise DimensionMismatch("ambient dimension must be positive")
        arr = np.asarray(vectors, dtype=float).reshape(-1, self.dim)
        if arr.shape[0] > self.dim:
            raise DimensionMismatch("more basis vectors than ambient dimension")
        if arr.shape[0] > 0:
            gram = arr @ arr.T
            if np.max(np.abs(gram - np.eye(arr.shape[0]))) > ORTHONORMALITY_TOL:
                raise ValueError("basis rows are not orthonormal")
        self.vectors = frozen(arr)

    @property
    def k(self):
        return self.vectors.shape[0]

    def project(self, x):
        """Orthogonal projection of ``x`` onto the subspace."""
        v = as_point(x, dim=self.dim)
        if self.k == 0:
            return np.zeros(self.dim)
        return self.vectors.T @ (self.vectors @ v)

    def project_complement(self, x):
        """Projection onto the orthogonal complement, computed as Id - P."""
        v = as_point(x, dim=self.dim)
        return v - self.project(v)

    def __repr__(self):
        return f"SubspaceBasis(dim={self.dim}, k={self.k})"


def orthonormalize(vectors, dep_tol=DEPENDENCE_TOL, on_dependent="raise"):
    """Orthonormalize ``vectors`` (modified Gram-Schmidt) into a SubspaceBasis.

    Parameters
    ----------
    vectors : sequence of 1-D arrays
        Spanning set; all vectors must share one dimension.
    dep_tol : float
        A vector whose residual norm after projecting out its predecessors
        falls below this threshold is treated as dependent.
    on_dependent : {"raise", "drop"}
        Whether a dependent vector raises RankDeficient or is silently
        dropped from the basis.

    Returns
    -------
    SubspaceBasis
        Spans the same subspace as the input.
    """
    vs = [as_point(v) for v in vectors]
    if not vs:
        raise DimensionMismatch("cannot infer ambient dimension from an empty set")
    dim = vs[0].shape[0]
    rows = []
    for i, v in enumerate(vs):
        r = as_point(v, dim=dim).copy()
        for q in rows:
            r -= (q @ r) * q
        # second pass for numerical orthogonality
        for q in rows:
            r -= (q @ r) * q
        norm = np.linalg.norm(r)
        if norm < dep_tol:
            if on_dependent == "drop":
                continue
            raise RankDeficient(f"vector {i} is dependent on its predecessors (residual {norm:.3e})")
        rows.append(r / norm)
    return SubspaceBasis(dim, np.array(rows).reshape(-1, dim))


def project(basis, x):
    """Orthogonal projection ``P_U x`` for an orthonormal ``basis`` of U."""
    return basis.project(x)


def is_monotone_linear(matrix, tol=1e-10):
    """True iff the smallest eigenvalue of the symmetric part is >= -tol."""
    m = as_square_matrix(matrix)
    sym = (m + m.T) / 2.0
    return bool(np.linalg.eigvalsh(sym)[0] >= -tol)
