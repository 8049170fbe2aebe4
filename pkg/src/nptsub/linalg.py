"""Dense complex Hermitian linear algebra used by every other module.

All matrices are plain ``numpy.ndarray`` objects of dtype complex128,
row-major.  Tolerances are relative to max(1, ||A||_F) with an absolute
floor of 1e-12, since everything in this package is O(1) scaled.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NoConvergence, NotHermitian, ShapeMismatch

HERMITICITY_RTOL = 1e-12


def hermiticity_defect(A: np.ndarray) -> float:
    """Largest entrywise deviation of A from its conjugate transpose."""
    return float(np.abs(A - A.conj().T).max()) if A.size else 0.0


def is_hermitian(A: np.ndarray, rtol: float = HERMITICITY_RTOL) -> bool:
    """Check max |A[i,j] - conj(A[j,i])| <= rtol * max(1, maxabs(A))."""
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        return False
    scale = max(1.0, float(np.abs(A).max())) if A.size else 1.0
    return hermiticity_defect(A) <= rtol * scale


def hermitize(A: np.ndarray) -> np.ndarray:
    """Return the Hermitian part (A + A^dagger) / 2."""
    return (A + A.conj().T) / 2


@dataclass(frozen=True)
class Spectrum:
    """Eigendecomposition of a Hermitian matrix.

    eigenvalues are real and ascending; eigenvectors is column-orthonormal
    with eigenvectors[:, k] belonging to eigenvalues[k].
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def _fix_phases(V: np.ndarray) -> np.ndarray:
    """Rotate each column so its largest-magnitude entry is real positive."""
    V = V.copy()
    idx = np.abs(V).argmax(axis=0)
    for k in range(V.shape[1]):
        pivot = V[idx[k], k]
        mag = abs(pivot)
        if mag > 0.0:
            V[:, k] *= pivot.conjugate() / mag
            V[idx[k], k] = V[idx[k], k].real  # kill residual imaginary dust
    return V


def eigh(A: np.ndarray) -> Spectrum:
    """Eigendecomposition of a Hermitian matrix.

    Eigenvalues come back ascending; eigenvector phases are normalized so
    the largest-magnitude component of each column is real and positive,
    which makes the output deterministic for identical input (up to
    rotations inside degenerate eigenspaces).

    Raises NotHermitian if A fails the Hermiticity tolerance, and
    NoConvergence if the underlying QR iteration gives up.
    """
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ShapeMismatch(f"expected a square matrix, got shape {A.shape}")
    if not is_hermitian(A):
        raise NotHermitian(
            f"matrix is not Hermitian within tolerance "
            f"(defect {hermiticity_defect(A):.3e})"
        )
    try:
        w, V = np.linalg.eigh(hermitize(A))
    except np.linalg.LinAlgError as exc:  # pragma: no cover - hard to trigger
        raise NoConvergence(f"eigensolver did not converge: {exc}") from exc
    return Spectrum(eigenvalues=w, eigenvectors=_fix_phases(V))


def eigvalsh(A: np.ndarray) -> np.ndarray:
    """Ascending eigenvalues of a Hermitian matrix (no vectors)."""
    A = np.asarray(A, dtype=complex)
    if not is_hermitian(A):
        raise NotHermitian("matrix is not Hermitian within tolerance")
    return np.linalg.eigvalsh(hermitize(A))


def project_psd(A: np.ndarray) -> np.ndarray:
    """Frobenius-nearest positive semidefinite matrix to Hermitian A.

    Clamps negative eigenvalues at zero and reconstructs.
    """
    spec = eigh(A)
    w = np.maximum(spec.eigenvalues, 0.0)
    V = spec.eigenvectors
    return hermitize((V * w) @ V.conj().T)


def kron(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Kronecker product with the first factor major.

    (A (x) B)[i*rB + k, j*cB + l] = A[i, j] * B[k, l], so the product basis
    |j>|k> is ordered lexicographically with index j*n + k.
    """
    return np.kron(np.asarray(A), np.asarray(B))


def frob_inner(A: np.ndarray, B: np.ndarray) -> float:
    """Frobenius inner product Re Tr(A^dagger B)."""
    A = np.asarray(A)
    B = np.asarray(B)
    if A.shape != B.shape:
        raise ShapeMismatch(f"shape mismatch {A.shape} vs {B.shape}")
    return float(np.vdot(A, B).real)
