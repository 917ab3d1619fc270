"""Dense complex linear algebra kernels.

Everything downstream works with plain complex128 ndarrays; the helpers here
add the few contracts the rest of the package relies on: an exponential that
is safe for anti-Hermitian generators, a Hermitian eigensolver with an
explicit symmetry check, and a least-squares expansion of an operator in a
supplied generator span (used to read commutators back into the algebra).
"""

import numpy as np
import scipy.linalg

from .errors import DimensionError, HermiticityError

HERMITICITY_RTOL = 1e-10


def as_complex_matrix(m):
    """Coerce to a square complex128 ndarray, validating shape."""
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {arr.shape}")
    return arr


def adjoint(m):
    return np.conjugate(np.asarray(m)).T


def commutator(x, y):
    """[x, y] = x @ y - y @ x."""
    x = np.asarray(x)
    y = np.asarray(y)
    if x.shape != y.shape:
        raise DimensionError(f"commutator shape mismatch: {x.shape} vs {y.shape}")
    return x @ y - y @ x


def anticommutator(x, y):
    return x @ y + y @ x


def kron(a, b):
    return np.kron(np.asarray(a), np.asarray(b))


def frob_norm(m):
    return float(np.linalg.norm(np.asarray(m)))


def max_abs(m):
    m = np.asarray(m)
    return float(np.max(np.abs(m))) if m.size else 0.0


def expm(m):
    """Matrix exponential (scaling-and-squaring).

    Contract (tested against an independent truncated-series oracle): for
    ||m|| <= 0.5 the result agrees with the 30-term Taylor sum to 1e-12.
    """
    return scipy.linalg.expm(as_complex_matrix(m))


def is_hermitian(m, rtol=HERMITICITY_RTOL):
    m = np.asarray(m)
    scale = max_abs(m)
    if scale == 0.0:
        return True
    return max_abs(m - adjoint(m)) <= rtol * scale


def hermitian_eigensolve(m, rtol=HERMITICITY_RTOL):
    """Eigendecomposition of a Hermitian matrix.

    Returns (eigenvalues ascending, eigenvector columns).  Raises
    HermiticityError when ||m - m†||_max exceeds rtol * ||m||_max; the input
    is symmetrized before the solve so roundoff asymmetry cannot leak into
    the output ordering.
    """
    m = as_complex_matrix(m)
    if not is_hermitian(m, rtol=rtol):
        raise HermiticityError(
            f"matrix is not Hermitian within rtol={rtol:g}: "
            f"deviation {max_abs(m - adjoint(m)):.3e} vs scale {max_abs(m):.3e}"
        )
    vals, vecs = np.linalg.eigh(0.5 * (m + adjoint(m)))
    return vals, vecs


def eigvals_general(m):
    """Eigenvalues of a general matrix, sorted by (real, imag) for determinism."""
    vals = np.linalg.eigvals(as_complex_matrix(m))
    order = np.lexsort((vals.imag, vals.real))
    return vals[order]


def snap_coefficient(c, zero_tol=1e-12, half_integer_tol=1e-9):
    """Clean up an expansion coefficient.

    Values below zero_tol collapse to 0; values within half_integer_tol of a
    half-integer multiple (per real/imag part) snap onto it.  This keeps the
    commutator tables exactly presentable without hiding genuine residuals,
    which are reported separately.
    """
    c = complex(c)
    if abs(c) < zero_tol:
        return 0.0 + 0.0j

    def snap_part(x):
        nearest = round(2.0 * x) / 2.0
        return nearest if abs(x - nearest) <= half_integer_tol else x

    return complex(snap_part(c.real), snap_part(c.imag))


def least_squares_expand(target, span, zero_tol=1e-12, half_integer_tol=1e-9):
    """Expand `target` in the span of matrices via a Gram-matrix solve.

    Args:
        target: square matrix to expand.
        span: sequence of matrices of the same shape.
    Returns:
        (coefficients list, residual) where residual is the Frobenius norm of
        target - sum(c_i * span_i) after snapping.  Exact (zero residual up
        to roundoff) whenever target genuinely lies in the span.
    """
    target = as_complex_matrix(target)
    vecs = []
    for s in span:
        s = np.asarray(s, dtype=np.complex128)
        if s.shape != target.shape:
            raise DimensionError(
                f"span member shape {s.shape} does not match target {target.shape}"
            )
        vecs.append(s.reshape(-1))
    basis = np.array(vecs)  # (n_span, dim*dim)
    tvec = target.reshape(-1)
    gram = basis.conj() @ basis.T
    rhs = basis.conj() @ tvec
    coeffs, *_ = np.linalg.lstsq(gram, rhs, rcond=None)
    coeffs = [snap_coefficient(c, zero_tol, half_integer_tol) for c in coeffs]
    recon = sum(c * m for c, m in zip(coeffs, span)) if coeffs else 0.0 * target
    residual = frob_norm(target - recon)
    return coeffs, residual


def greedy_match(closed_values, oracle_values, tolerance):
    """Greedy nearest-neighbor matching of closed-form values onto oracle values.

    Processes closed_values in order; each claims the nearest unused oracle
    value, ties broken toward the smaller oracle index, and the claim only
    sticks when the residual is within tolerance.  Returns (matches, unused)
    where matches[i] = (oracle_index or None, residual) and unused is the
    sorted list of unclaimed oracle indices.
    """
    oracle = np.asarray(oracle_values, dtype=float)
    used = np.zeros(len(oracle), dtype=bool)
    matches = []
    for v in closed_values:
        if len(oracle) == 0:
            matches.append((None, np.inf))
            continue
        dist = np.abs(oracle - v)
        dist[used] = np.inf
        idx = int(np.argmin(dist))  # argmin takes the first (smallest index) tie
        resid = float(dist[idx])
        if np.isfinite(resid) and resid <= tolerance:
            used[idx] = True
            matches.append((idx, resid))
        else:
            matches.append((None, resid if np.isfinite(resid) else np.inf))
    unused = [i for i in range(len(oracle)) if not used[i]]
    return matches, unused
