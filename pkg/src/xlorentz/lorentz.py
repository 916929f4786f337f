"""The Lorentz subgroup: parameter types, closed-form SU(2)/SL(2,C)
exponentials, composition rules (including the Wigner rotation), inverses,
and the four-vector matrices and generators.

Parameter conventions:
- Rotations are axis-angle vectors theta = theta * theta_hat living on the
  covering group; canonical magnitude is [0, 2pi] (2pi is -identity, which
  [0, 2pi) cannot represent).
- Boosts store the spatial four-velocity part u; u0 = sqrt(1 + |u|^2) is
  always recomputed so u0^2 - |u|^2 = 1 holds by construction.
- A Lorentz element is L(u) R(theta), boost to the left.
- Four-vector matrices act on covariant components, w'_mu = M_mu^nu w_nu;
  their spatial rotation block is the transpose (inverse) of the active
  Rodrigues rotation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .analytic import cos_half, cos_sqrt, omc_sqrt, sinc_half, sinc_sqrt
from .core import ArrayC, ArrayR, DomainError, _SIGMA, require_finite

TWO_PI = 2.0 * math.pi
Z_AXIS = np.array([0.0, 0.0, 1.0])
Z_AXIS.flags.writeable = False

_EPS3 = np.zeros((3, 3, 3))
for _i, _j, _k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
    _EPS3[_i, _j, _k] = 1.0
    _EPS3[_i, _k, _j] = -1.0
_EPS3.flags.writeable = False


def _vec3(v, what: str) -> ArrayR:
    a = np.array(v, dtype=float).reshape(-1)
    if a.shape != (3,):
        raise DomainError(f"{what} must be a 3-vector, got shape {a.shape}")
    require_finite(a, what)
    a.flags.writeable = False
    return a


# =============================================================================
# Parameter types
# =============================================================================

@dataclass(frozen=True)
class RotationParams:
    """Axis-angle rotation vector theta * theta_hat (radians).

    Canonicalized on construction: the magnitude is folded into [0, 2pi]
    (angles in (2pi, 4pi) map to (4pi - theta, -axis), the same group
    element exactly; 4pi is a full covering-group period).
    """
    theta: ArrayR

    def __post_init__(self):
        vec = _vec3(self.theta, "rotation vector")
        mag = float(np.linalg.norm(vec))
        if mag > TWO_PI:
            folded = math.fmod(mag, 2.0 * TWO_PI)
            if folded > TWO_PI:
                vec = vec * (-(2.0 * TWO_PI - folded) / mag)
            else:
                vec = vec * (folded / mag)
            vec.flags.writeable = False
        object.__setattr__(self, "theta", vec)

    @property
    def angle(self) -> float:
        return float(np.linalg.norm(self.theta))

    @property
    def axis(self) -> ArrayR:
        a = self.angle
        if a == 0.0:
            return Z_AXIS.copy()
        return self.theta / a

    @classmethod
    def identity(cls) -> "RotationParams":
        return cls(np.zeros(3))

    @classmethod
    def from_axis_angle(cls, axis, angle: float) -> "RotationParams":
        ax = _vec3(axis, "rotation axis")
        n = float(np.linalg.norm(ax))
        if n == 0.0:
            raise DomainError("rotation axis must be nonzero")
        return cls(ax * (angle / n))


@dataclass(frozen=True)
class BoostParams:
    """Spatial part u of the boost four-velocity; u0 is always derived."""
    u: ArrayR

    def __post_init__(self):
        object.__setattr__(self, "u", _vec3(self.u, "boost vector"))

    @property
    def u0(self) -> float:
        return math.sqrt(1.0 + float(self.u @ self.u))

    @property
    def rapidity(self) -> float:
        return math.asinh(float(np.linalg.norm(self.u)))

    @classmethod
    def identity(cls) -> "BoostParams":
        return cls(np.zeros(3))

    @classmethod
    def from_rapidity(cls, axis, beta: float) -> "BoostParams":
        ax = _vec3(axis, "boost axis")
        n = float(np.linalg.norm(ax))
        if n == 0.0:
            raise DomainError("boost axis must be nonzero")
        return cls(ax * (math.sinh(beta) / n))


@dataclass(frozen=True)
class LorentzParams:
    """One Lorentz-group element in the L(u) R(theta) chart."""
    u: BoostParams
    theta: RotationParams

    @classmethod
    def identity(cls) -> "LorentzParams":
        return cls(BoostParams.identity(), RotationParams.identity())


# =============================================================================
# Spin-representation matrices (4x4, two identical 2x2 blocks for rotations)
# =============================================================================

def rot_su2(theta: RotationParams) -> ArrayC:
    """exp(i theta.J) in closed form: each 2x2 block is
    cos(theta/2) + i sin(theta/2) theta_hat.sigma. Unitary."""
    t = theta.theta
    d = float(t @ t)
    block = cos_half(d) * np.eye(2, dtype=np.complex128)
    block += 1j * sinc_half(d) * np.einsum("k,kij->ij", t, _SIGMA)
    out = np.zeros((4, 4), dtype=np.complex128)
    out[:2, :2] = block
    out[2:, 2:] = block
    return out


def boost_sl2(u: BoostParams) -> ArrayC:
    """exp(i u-chart . K) in closed form:
    sqrt((u0+1)/2) 1 + sqrt((u0-1)/2) u_hat.(sigma block), Hermitian positive."""
    c = math.sqrt((u.u0 + 1.0) / 2.0)
    m = u.u / (2.0 * c)
    ms = np.einsum("k,kij->ij", m, _SIGMA)
    out = c * np.eye(4, dtype=np.complex128)
    out[:2, 2:] = ms
    out[2:, :2] = ms
    return out


def lorentz_matrix(p: LorentzParams) -> ArrayC:
    """Spin-representation matrix L(u) R(theta)."""
    return boost_sl2(p.u) @ rot_su2(p.theta)


def rotation_params_from_matrix(m: ArrayC) -> RotationParams:
    """Extract axis-angle parameters from a (possibly sign-flipped) rotation
    matrix in the spin representation. Covers theta in [0, 2pi]."""
    block = m[:2, :2]
    c = float(np.trace(block).real) / 2.0
    v = np.array([float(np.trace(_SIGMA[k] @ block).imag) / 2.0 for k in range(3)])
    s = float(np.linalg.norm(v))
    ang = 2.0 * math.atan2(s, c)
    if s == 0.0:
        return RotationParams(ang * Z_AXIS)
    return RotationParams(v * (ang / s))


# =============================================================================
# Composition and inverse (closed form; matrices are only the oracle)
# =============================================================================

def compose_rotations(theta2: RotationParams, theta1: RotationParams) -> RotationParams:
    """Rotation parameters of R(theta2) R(theta1).

    Closed form for the half-angle pair:
      cos(th/2)           = c2 c1 - (t2.t1) s2 s1
      theta_hat sin(th/2) = t2 s2 c1 + t1 c2 s1 - (t2 x t1) s2 s1
    with c = cos(|t|/2) and s = sin(|t|/2)/|t| profiles. The cross-term sign
    is fixed by the 2x2 product with sigma1 sigma2 = i sigma3; the result is
    canonicalized and the axis falls back to z-hat when sin(th/2) = 0.
    """
    t2, t1 = theta2.theta, theta1.theta
    d2, d1 = float(t2 @ t2), float(t1 @ t1)
    c2, s2 = cos_half(d2), sinc_half(d2)
    c1, s1 = cos_half(d1), sinc_half(d1)
    c = c2 * c1 - float(t2 @ t1) * s2 * s1
    v = t2 * (s2 * c1) + t1 * (c2 * s1) - np.cross(t2, t1) * (s2 * s1)
    s = float(np.linalg.norm(v))
    ang = 2.0 * math.atan2(s, c)
    if s == 0.0:
        return RotationParams(ang * Z_AXIS)
    return RotationParams(v * (ang / s))


def compose_boosts(u2: BoostParams, u1: BoostParams) -> tuple[BoostParams, RotationParams]:
    """Boost and Wigner-rotation parameters with
    L(u2) L(u1) = L(u_out) R(theta_out).

    Scalar parts:
      u_out^0        = u2^0 u1^0 + u2.u1
      tan(theta/2)   = |u2 x u1| / ((u2^0+1)(u1^0+1) + u2.u1),  axis u2 x u1.
    The direction of u_out solves the remaining half-rapidity relation: the
    vector b = u2_half c1 + c2 u1_half equals u_out_half rotated by +theta/2
    about the Wigner axis.
    """
    v2, v1 = u2.u, u1.u
    g2, g1 = u2.u0, u1.u0
    u0 = g2 * g1 + float(v2 @ v1)
    w = np.cross(v2, v1)
    wn = float(np.linalg.norm(w))
    denom = (g2 + 1.0) * (g1 + 1.0) + float(v2 @ v1)
    ang = 2.0 * math.atan2(wn, denom)
    wigner = RotationParams(w * (ang / wn)) if wn > 0.0 else RotationParams.identity()

    c2 = math.sqrt((g2 + 1.0) / 2.0)
    c1 = math.sqrt((g1 + 1.0) / 2.0)
    b = (v2 / (2.0 * c2)) * c1 + c2 * (v1 / (2.0 * c1))
    half = rotate3(-0.5 * wigner.theta, b)
    u_out = 2.0 * math.sqrt((u0 + 1.0) / 2.0) * half
    return BoostParams(u_out), wigner


def compose_lorentz(p2: LorentzParams, p1: LorentzParams) -> LorentzParams:
    """Parameters of the product L(u2)R(theta2) L(u1)R(theta1): the rotation
    factor of p2 transports u1 (covariant spatial action), then the pure-boost
    composition supplies the Wigner rotation."""
    u1r = BoostParams(rotate3(-p2.theta.theta, p1.u.u))
    u_out, wigner = compose_boosts(p2.u, u1r)
    theta_out = compose_rotations(wigner, compose_rotations(p2.theta, p1.theta))
    return LorentzParams(u_out, theta_out)


def inverse_lorentz(p: LorentzParams) -> LorentzParams:
    """{u, theta}^{-1} = {-R(-theta) u, -theta} (covariant rotation action)."""
    u_inv = -rotate3(p.theta.theta, p.u.u)
    return LorentzParams(BoostParams(u_inv), RotationParams(-p.theta.theta))


# =============================================================================
# Four-vector matrices and generators (covariant action)
# =============================================================================

def rotate3(theta: ArrayR, v: ArrayR) -> ArrayR:
    """Active Rodrigues rotation of a 3-vector by the axis-angle vector theta.

    The covariant spatial action used throughout the composition rules is
    rotate3(-theta, v), i.e. the transpose.
    """
    d = float(theta @ theta)
    return (cos_sqrt(d) * v
            + sinc_sqrt(d) * np.cross(theta, v)
            + omc_sqrt(d) * theta * float(theta @ v))


def four_rotation(theta: RotationParams) -> ArrayR:
    """4x4 covariant-action rotation: R_0^0 = 1, spatial block
    cos(theta) delta + (1-cos)(theta_hat theta_hat) + sin(theta) theta_j eps_jkm."""
    t = theta.theta
    d = float(t @ t)
    out = np.eye(4)
    out[1:, 1:] = (cos_sqrt(d) * np.eye(3)
                   + omc_sqrt(d) * np.outer(t, t)
                   + sinc_sqrt(d) * np.einsum("j,jkm->km", t, _EPS3))
    return out


def four_boost(u: BoostParams) -> ArrayR:
    """4x4 covariant-action boost: L_0^0 = u0, L_0^m = -u_m = L_m^0,
    spatial block delta + u u / (1 + u0). Preserves the quadratic form."""
    v = u.u
    g = u.u0
    out = np.empty((4, 4))
    out[0, 0] = g
    out[0, 1:] = -v
    out[1:, 0] = -v
    out[1:, 1:] = np.eye(3) + np.outer(v, v) / (1.0 + g)
    return out


def four_lorentz(p: LorentzParams) -> ArrayR:
    """Covariant four-vector matrix of L(u) R(theta)."""
    return four_boost(p.u) @ four_rotation(p.theta)


def four_generators() -> tuple[ArrayR, ArrayR]:
    """The six 4x4 generators of the covariant action: (JJ, KK), each of
    shape (3, 4, 4), with (J_m)_j^k = eps_mjk and (K_m)_0^k = -delta_mk =
    (K_m)_k^0 the only non-vanishing entries."""
    jj = np.zeros((3, 4, 4))
    kk = np.zeros((3, 4, 4))
    for m in range(3):
        jj[m, 1:, 1:] = _EPS3[m]
        kk[m, 0, 1 + m] = -1.0
        kk[m, 1 + m, 0] = -1.0
    return jj, kk


MINKOWSKI = np.diag([-1.0, 1.0, 1.0, 1.0])
MINKOWSKI.flags.writeable = False


def minkowski_dot(a: ArrayR, b: ArrayR) -> float:
    """eta = diag(-1,+1,+1,+1) pairing of covariant four-vectors."""
    return float(-a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3])
