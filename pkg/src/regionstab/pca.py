"""Principal component analysis with contribution-rate selection.

The full pipeline is standardize -> correlation matrix -> eigendecomposition
-> contribution rates -> component count selection. Two reduction modes are
offered:

* ``index-selection`` (default): keep the k original named columns, ranked
  by the contribution of the component each column dominates. This mirrors
  how the selected components are consumed downstream, where the network is
  trained on named indexes rather than on abstract projections.
* ``projection``: classic PCA scores, Z times the first k eigenvector
  columns.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    AllZeroError,
    NegativeEigenvalueError,
    ThresholdUnreachableError,
)
from .numerics import DataMatrix, SymmetricEigen, correlation_matrix, standardize, symmetric_eigen

INDEX_SELECTION = "index-selection"
PROJECTION = "projection"
_MODES = (INDEX_SELECTION, PROJECTION)

_NEGATIVE_EIGENVALUE_TOL = -1e-10


@dataclass(frozen=True)
class PcaResult:
    """Eigen spectrum, contribution rates, and the selected components.

    ``ranked_indexes`` pairs every component (descending eigenvalue) with
    the original column it dominates; ``selected_indexes`` is its first
    ``selected_k`` entries.
    """

    eigenvalues: np.ndarray
    contribution_rates: np.ndarray
    accumulated_rates: np.ndarray
    selected_k: int
    selected_indexes: tuple
    ranked_indexes: tuple
    loadings: np.ndarray


def contribution_rates(eigenvalues) -> tuple[np.ndarray, np.ndarray]:
    """Contribution rate Cr_i = lambda_i / sum(lambda) and its prefix sums.

    Eigenvalues must be nonnegative (round-off down to -1e-10 is clamped);
    raises AllZeroError when the spectrum sums to zero.
    """
    lam = np.asarray(eigenvalues, dtype=float).copy()
    if lam.ndim != 1 or lam.size == 0:
        raise AllZeroError("need a non-empty 1-D eigenvalue vector")
    if (lam < _NEGATIVE_EIGENVALUE_TOL).any():
        raise NegativeEigenvalueError(f"eigenvalue {lam.min():.3e} below tolerance")
    lam[lam < 0.0] = 0.0
    total = lam.sum()
    if total <= 0.0:
        raise AllZeroError("eigenvalues sum to zero")
    cr = lam / total
    return cr, np.cumsum(cr)


def select_components(accumulated, threshold: float) -> int:
    """Minimal k whose accumulated contribution rate reaches the threshold."""
    acc = np.asarray(accumulated, dtype=float)
    if not 0.0 < threshold <= 1.0:
        raise ValueError(f"threshold must be in (0, 1], got {threshold}")
    if (np.diff(acc) < -1e-12).any():
        raise ValueError("accumulated rates must be nondecreasing")
    hits = np.nonzero(acc >= threshold)[0]
    if hits.size == 0:
        # Cannot happen when the rates accumulate to 1; guarded regardless.
        raise ThresholdUnreachableError(
            f"accumulated rates top out at {acc[-1]:.6f} < {threshold}")
    return int(hits[0]) + 1


def _rank_columns_by_component(eigen: SymmetricEigen, column_names) -> tuple:
    """Attribute each component (descending eigenvalue) to one original column.

    Component i claims the not-yet-claimed column with the largest absolute
    loading in its eigenvector, yielding a ranking of column names by the
    variance of the component each one dominates.
    """
    p = len(column_names)
    taken = np.zeros(p, dtype=bool)
    ranked = []
    for i in range(p):
        load = np.where(taken, -1.0, np.abs(eigen.eigenvectors[:, i]))
        j = int(np.argmax(load))
        taken[j] = True
        ranked.append(column_names[j])
    return tuple(ranked)


def run_pca(X: DataMatrix, threshold: float = 0.95,
            mode: str = INDEX_SELECTION) -> tuple[PcaResult, DataMatrix]:
    """Full PCA pipeline returning the spectrum summary and a reduced matrix."""
    if mode not in _MODES:
        raise ValueError(f"mode must be one of {_MODES}, got {mode!r}")
    Z, _ = standardize(X)
    R = correlation_matrix(Z)
    eigen = symmetric_eigen(R)
    cr, acc = contribution_rates(eigen.eigenvalues)
    k = select_components(acc, threshold)

    ranked = _rank_columns_by_component(eigen, X.column_names)
    selected = ranked[:k]
    result = PcaResult(
        eigenvalues=eigen.eigenvalues,
        contribution_rates=cr,
        accumulated_rates=acc,
        selected_k=k,
        selected_indexes=selected,
        ranked_indexes=ranked,
        loadings=eigen.eigenvectors,
    )

    if mode == INDEX_SELECTION:
        cols = [X.column_names.index(name) for name in selected]
        reduced = DataMatrix(
            values=X.values[:, cols],
            column_names=selected,
            column_units=tuple(X.column_units[c] for c in cols),
        )
    else:
        scores = Z.values @ eigen.eigenvectors[:, :k]
        reduced = DataMatrix(
            values=scores,
            column_names=tuple(f"PC{i+1}" for i in range(k)),
            column_units=("dimensionless",) * k,
        )
    return result, reduced
