"""Complex 4x4 matrix kernel: Pauli and gamma matrices, the ten group
generators, commutators, matrix exponentials, and Clifford-basis trace
projection.

CONVENTIONS (frozen; everything downstream depends on them):
- Standard Pauli basis, sigma3 diagonal, sigma1 sigma2 = i sigma3.
- gamma^0 = blockdiag(1, -1), gamma^k = offdiag(sigma_k, -sigma_k)
  (Dirac representation), gamma5 = i gamma^0 gamma^1 gamma^2 gamma^3.
- Generator order J1 J2 J3 K1 K2 K3 G0 G1 G2 G3 is frozen: it defines the
  row/column meaning of every 10x10 matrix in this package.
- All group-element matrices are unit-determinant 4x4 complex arrays.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray
from scipy.linalg import expm as _scipy_expm

ArrayC = NDArray[np.complex128]
ArrayR = NDArray[np.float64]


class DomainError(ValueError):
    """Raised when an argument is outside an operation's domain."""


class ExpansionError(RuntimeError):
    """Raised when a matrix fails to expand in the generator basis."""


# =============================================================================
# Tolerances
# =============================================================================

@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerances and solver knobs.

    Defaults are the shipped values; the CLI can override any field by name.
    """
    tol_lin: float = 1e-12      # linear-algebra identities (4x4 products)
    tol_det: float = 1e-10      # |det - 1| for group elements
    tol_param: float = 1e-9     # parameter-space comparisons
    tol_null: float = 1e-8      # relative null-branch classification
    tol_fact: float = 1e-10     # Frobenius residual for W.L.R factorization
    tol_comp: float = 1e-9      # Dirac-composition residual system
    tol_fd: float = 1e-6        # finite-difference agreement
    h_fd: float = 1e-5          # central finite-difference step
    cond_max: float = 1e8       # max condition number for Theta solves
    max_iter: int = 50          # Gauss-Newton iteration cap

    def replacing(self, **overrides: float) -> "Tolerances":
        vals = {k: getattr(self, k) for k in self.__dataclass_fields__}
        for name, value in overrides.items():
            if name not in vals:
                raise DomainError(f"unknown tolerance name {name!r}")
            vals[name] = type(vals[name])(value)
        return Tolerances(**vals)


DEFAULT_TOL = Tolerances()


def require_finite(a: np.ndarray, what: str) -> None:
    if not np.all(np.isfinite(a)):
        raise DomainError(f"{what} has non-finite entries")


# =============================================================================
# Pauli and gamma matrices
# =============================================================================

_SIGMA = np.array([
    [[0, 1], [1, 0]],
    [[0, -1j], [1j, 0]],
    [[1, 0], [0, -1]],
], dtype=np.complex128)
_SIGMA.flags.writeable = False

_I2 = np.eye(2, dtype=np.complex128)
_Z2 = np.zeros((2, 2), dtype=np.complex128)


def pauli(k: int) -> ArrayC:
    """Pauli matrix sigma_k for k in {1, 2, 3} (standard basis, sigma3 diagonal)."""
    if k not in (1, 2, 3):
        raise DomainError(f"Pauli index must be 1, 2 or 3, got {k}")
    return _SIGMA[k - 1].copy()


def _blockdiag(a: ArrayC, b: ArrayC) -> ArrayC:
    return np.block([[a, _Z2], [_Z2, b]])


def _offdiag(a: ArrayC, b: ArrayC) -> ArrayC:
    return np.block([[_Z2, a], [b, _Z2]])


GAMMA0 = _blockdiag(_I2, -_I2)
GAMMAS = np.stack([GAMMA0] + [_offdiag(_SIGMA[k], -_SIGMA[k]) for k in range(3)])
GAMMA5 = (1j * GAMMA0 @ GAMMAS[1] @ GAMMAS[2] @ GAMMAS[3])
for _a in (GAMMA0, GAMMAS, GAMMA5):
    _a.flags.writeable = False


def gamma(mu: int) -> ArrayC:
    """Dirac matrix gamma^mu, mu in 0..3."""
    if mu not in (0, 1, 2, 3):
        raise DomainError(f"gamma index must be 0..3, got {mu}")
    return GAMMAS[mu].copy()


# =============================================================================
# Generators
# =============================================================================

class GeneratorIndex(enum.IntEnum):
    """The ten generators in frozen order (rows/columns of 10x10 matrices)."""
    J1 = 0
    J2 = 1
    J3 = 2
    K1 = 3
    K2 = 4
    K3 = 5
    G0 = 6
    G1 = 7
    G2 = 8
    G3 = 9


def _build_generators() -> ArrayC:
    gens = np.zeros((10, 4, 4), dtype=np.complex128)
    for k in range(3):
        gens[GeneratorIndex.J1 + k] = 0.5 * _blockdiag(_SIGMA[k], _SIGMA[k])
        gens[GeneratorIndex.K1 + k] = -0.5j * _offdiag(_SIGMA[k], _SIGMA[k])
    for mu in range(4):
        gens[GeneratorIndex.G0 + mu] = 0.5 * GAMMAS[mu]
    gens.flags.writeable = False
    return gens


GENERATORS = _build_generators()


def generator(r: GeneratorIndex | int) -> ArrayC:
    """4x4 matrix of generator r (traceless; J Hermitian, K anti-Hermitian,
    G0 = gamma^0/2, Gk = gamma^k/2)."""
    r = GeneratorIndex(r)
    return GENERATORS[r].copy()


def commutator(a: ArrayC, b: ArrayC) -> ArrayC:
    """a b - b a."""
    return a @ b - b @ a


def mat_exp(a: ArrayC) -> ArrayC:
    """Matrix exponential (scaling-and-squaring Pade; sub-1e-14 on 4x4 inputs
    at the scales used here). Oracle for every closed-form exponential."""
    a = np.asarray(a, dtype=np.complex128)
    require_finite(a, "mat_exp argument")
    return _scipy_expm(a)


# =============================================================================
# Clifford basis and trace projection
# =============================================================================

def _build_clifford_basis() -> tuple[ArrayC, tuple[str, ...]]:
    mats: list[ArrayC] = [np.eye(4, dtype=np.complex128)]
    labels: list[str] = ["1"]
    for mu in range(4):
        mats.append(GAMMAS[mu])
        labels.append(f"g{mu}")
    for mu in range(4):
        for nu in range(mu + 1, 4):
            mats.append(GAMMAS[mu] @ GAMMAS[nu])
            labels.append(f"g{mu}g{nu}")
    for mu in range(4):
        mats.append(GAMMA5 @ GAMMAS[mu])
        labels.append(f"g5g{mu}")
    mats.append(GAMMA5.copy())
    labels.append("g5")
    basis = np.stack(mats)
    basis.flags.writeable = False
    return basis, tuple(labels)


CLIFFORD_BASIS, CLIFFORD_LABELS = _build_clifford_basis()
# Each basis element B satisfies tr(B^dagger B) = 4 and distinct elements are
# trace-orthogonal, so coefficients come from normalized traces.
_CLIFFORD_DUAL = np.conj(np.transpose(CLIFFORD_BASIS, (0, 2, 1))) / 4.0
_CLIFFORD_DUAL.flags.writeable = False


@dataclass(frozen=True)
class CliffordCoefficients:
    """Expansion of a 4x4 complex matrix over the 16-element Clifford basis
    {1, g0..g3, the six products g_mu g_nu (mu<nu), g5 g_mu, g5}."""
    coeffs: ArrayC
    labels: tuple[str, ...] = field(default=CLIFFORD_LABELS, repr=False)

    def __getitem__(self, label: str) -> complex:
        return complex(self.coeffs[self.labels.index(label)])


def clifford_project(m: ArrayC) -> CliffordCoefficients:
    """Coefficients of m over the Clifford basis via normalized traces."""
    m = np.asarray(m, dtype=np.complex128)
    coeffs = np.einsum("bij,ji->b", _CLIFFORD_DUAL, m)
    return CliffordCoefficients(coeffs=coeffs)


def clifford_reconstruct(c: CliffordCoefficients) -> ArrayC:
    """Inverse of clifford_project."""
    return np.einsum("b,bij->ij", c.coeffs, CLIFFORD_BASIS)


def even_odd_split(m: ArrayC) -> tuple[ArrayC, ArrayC]:
    """Split m into its even and odd Clifford parts via g5 conjugation.

    Even = span{1, g_mu g_nu, g5}; odd = span{g_mu, g5 g_mu}. g5 commutes with
    the even part and anticommutes with the odd part, so no basis projection
    is needed.
    """
    conj = GAMMA5 @ m @ GAMMA5
    return 0.5 * (m + conj), 0.5 * (m - conj)


# =============================================================================
# Generator-basis projection
# =============================================================================

# tr(X_r^dagger X_s) = delta_rs for the ten generators.
_GEN_DUAL = np.conj(np.transpose(GENERATORS, (0, 2, 1)))
_GEN_DUAL.flags.writeable = False


def generator_expand(m: ArrayC, tol: float | None = None) -> ArrayR:
    """Expand m in the generator basis, m = sum_r c_r X_r with real c_r.

    Raises ExpansionError if the expansion residual exceeds tol (the matrix
    left the real span of the algebra).
    """
    coeffs = np.einsum("rij,ji->r", _GEN_DUAL, np.asarray(m, dtype=np.complex128))
    real = coeffs.real.copy()
    recon = np.einsum("r,rij->ij", real, GENERATORS)
    resid = float(np.linalg.norm(m - recon))
    limit = DEFAULT_TOL.tol_lin if tol is None else tol
    scale = max(1.0, float(np.linalg.norm(m)))
    if resid > limit * scale:
        raise ExpansionError(
            f"matrix is not in the generator span: residual {resid:.3e} "
            f"(tolerance {limit * scale:.3e})"
        )
    return real
