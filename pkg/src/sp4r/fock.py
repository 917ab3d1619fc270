"""Two-mode truncated Fock space: basis bookkeeping and ladder operators.

The basis is the rectangle n_a in [0, cutoff_a], n_b in [0, cutoff_b],
enumerated n_a-major: index = n_a * (cutoff_b + 1) + n_b.  Truncation is
handled everywhere downstream by interior projectors: matrix elements
between states at least `margin` quanta away from the cutoff are exact, so
identities are always asserted on the interior, never at the boundary.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, InvalidArgumentError


@dataclass(frozen=True)
class FockBasis:
    """Rectangular two-mode occupation basis."""

    cutoff_a: int
    cutoff_b: int

    def __post_init__(self):
        if self.cutoff_a < 1 or self.cutoff_b < 1:
            raise InvalidArgumentError(
                f"cutoffs must be >= 1, got ({self.cutoff_a}, {self.cutoff_b})"
            )

    @property
    def dim(self):
        return (self.cutoff_a + 1) * (self.cutoff_b + 1)

    def index(self, n_a, n_b):
        if not (0 <= n_a <= self.cutoff_a and 0 <= n_b <= self.cutoff_b):
            raise InvalidArgumentError(
                f"occupation ({n_a}, {n_b}) outside basis "
                f"({self.cutoff_a}, {self.cutoff_b})"
            )
        return n_a * (self.cutoff_b + 1) + n_b

    def state(self, index):
        if not (0 <= index < self.dim):
            raise InvalidArgumentError(f"index {index} outside basis of dim {self.dim}")
        return divmod(index, self.cutoff_b + 1)

    def occupations(self):
        """(n_a, n_b) integer arrays aligned with the basis index."""
        nb_dim = self.cutoff_b + 1
        idx = np.arange(self.dim)
        return idx // nb_dim, idx % nb_dim


@dataclass
class OperatorMatrix:
    """A dense operator together with the basis it lives on.

    spin_factor marks operators on the doubled (two-level tensor Fock)
    space; those have dimension 2 * basis.dim.
    """

    matrix: np.ndarray
    basis: FockBasis
    spin_factor: bool = False
    label: str = ""

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=np.complex128)
        expected = self.basis.dim * (2 if self.spin_factor else 1)
        if self.matrix.shape != (expected, expected):
            raise DimensionError(
                f"operator '{self.label}' has shape {self.matrix.shape}, "
                f"expected ({expected}, {expected})"
            )

    @property
    def dim(self):
        return self.matrix.shape[0]

    def adjoint(self, label=""):
        return OperatorMatrix(
            np.conjugate(self.matrix).T, self.basis, self.spin_factor, label
        )

    def _compatible(self, other):
        if not isinstance(other, OperatorMatrix):
            raise DimensionError("expected an OperatorMatrix operand")
        if other.basis != self.basis or other.spin_factor != self.spin_factor:
            raise DimensionError(
                f"operand bases differ: '{self.label}' vs '{other.label}'"
            )

    def __matmul__(self, other):
        self._compatible(other)
        return OperatorMatrix(
            self.matrix @ other.matrix, self.basis, self.spin_factor, ""
        )

    def __add__(self, other):
        self._compatible(other)
        return OperatorMatrix(
            self.matrix + other.matrix, self.basis, self.spin_factor, ""
        )

    def __sub__(self, other):
        self._compatible(other)
        return OperatorMatrix(
            self.matrix - other.matrix, self.basis, self.spin_factor, ""
        )

    def __mul__(self, scalar):
        return OperatorMatrix(self.matrix * scalar, self.basis, self.spin_factor, "")

    __rmul__ = __mul__


def build_basis(cutoff_a, cutoff_b):
    return FockBasis(int(cutoff_a), int(cutoff_b))


@dataclass
class BosonOperators:
    """Ladder matrices for both modes on a shared basis."""

    basis: FockBasis
    a: np.ndarray = field(repr=False, default=None)
    a_dag: np.ndarray = field(repr=False, default=None)
    b: np.ndarray = field(repr=False, default=None)
    b_dag: np.ndarray = field(repr=False, default=None)

    def number_a(self):
        return self.a_dag @ self.a

    def number_b(self):
        return self.b_dag @ self.b


def boson_operators(basis):
    """Build a, a†, b, b† with <n-1|a|n> = sqrt(n) per mode."""
    dim = basis.dim
    a = np.zeros((dim, dim), dtype=np.complex128)
    b = np.zeros((dim, dim), dtype=np.complex128)
    for n_a in range(basis.cutoff_a + 1):
        for n_b in range(basis.cutoff_b + 1):
            i = basis.index(n_a, n_b)
            if n_a > 0:
                a[basis.index(n_a - 1, n_b), i] = np.sqrt(n_a)
            if n_b > 0:
                b[basis.index(n_a, n_b - 1), i] = np.sqrt(n_b)
    return BosonOperators(
        basis=basis, a=a, a_dag=np.conjugate(a).T, b=b, b_dag=np.conjugate(b).T
    )


def interior_indices(basis, margin):
    """Indices of states with n_a <= cutoff_a - margin and likewise for b."""
    margin = int(margin)
    if margin < 0 or margin >= min(basis.cutoff_a, basis.cutoff_b):
        raise InvalidArgumentError(
            f"margin {margin} must satisfy 0 <= margin < min(cutoffs) "
            f"= {min(basis.cutoff_a, basis.cutoff_b)}"
        )
    n_a, n_b = basis.occupations()
    keep = (n_a <= basis.cutoff_a - margin) & (n_b <= basis.cutoff_b - margin)
    return np.nonzero(keep)[0]


def interior_projector(basis, margin, spin_factor=False):
    """Diagonal 0/1 projector onto the interior states.

    margin 0 is the identity.  With spin_factor the projector acts on the
    doubled space (both spin components of each interior state kept).
    """
    idx = interior_indices(basis, margin)
    diag = np.zeros(basis.dim)
    diag[idx] = 1.0
    if spin_factor:
        diag = np.concatenate([diag, diag])
    return OperatorMatrix(
        np.diag(diag).astype(np.complex128),
        basis,
        spin_factor,
        f"interior(margin={margin})",
    )


def su11_sector_indices(basis, diff):
    """Indices of the fixed number-difference sector n_a - n_b = diff.

    Ordered by the pair-excitation count q = min(n_a, n_b), which is the
    rung label of the two-mode su(1,1) ladder (K_plus_ab steps q -> q + 1).
    """
    n_a, n_b = basis.occupations()
    sel = np.nonzero(n_a - n_b == diff)[0]
    order = np.argsort(np.minimum(n_a[sel], n_b[sel]), kind="stable")
    return sel[order]


def su2_sector_indices(basis, total):
    """Indices of the fixed total sector n_a + n_b = total, ordered by n_a.

    Ascending n_a means ascending J0 eigenvalue (n_a - n_b)/2, i.e. the su(2)
    weight runs from -j to +j along the returned list.  Only complete when
    total <= min(cutoff_a, cutoff_b).
    """
    n_a, n_b = basis.occupations()
    sel = np.nonzero(n_a + n_b == total)[0]
    order = np.argsort(n_a[sel], kind="stable")
    return sel[order]


def basis_vector(basis, n_a, n_b):
    v = np.zeros(basis.dim, dtype=np.complex128)
    v[basis.index(n_a, n_b)] = 1.0
    return v
