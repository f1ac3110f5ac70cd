"""Quaternion arithmetic and the rotation primitives used to pick canonical
representatives of conjugation orbits of quaternion vectors.

Conventions: a quaternion is q = a0 + a1*i + a2*j + a3*k with real
components, ij = k, jk = i, ki = j.  The complex split q = c1 + c2*j
(c1 = a0 + a1*i, c2 = a2 + a3*i) is used throughout for interop with
complex linear algebra.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInputError, DomainError

# Relative threshold below which a component of a quaternion entry counts
# as exactly zero when classifying entries as real / complex / generic.
CLASSIFY_EPS = 1e-9

# Relative cross-product threshold below which two imaginary vectors are
# treated as linearly dependent.
DEPENDENCE_EPS = 1e-10


@dataclass(frozen=True, slots=True)
class Quaternion:
    a0: float = 0.0
    a1: float = 0.0
    a2: float = 0.0
    a3: float = 0.0

    # -- constructors -------------------------------------------------
    @staticmethod
    def from_complex_pair(c1: complex, c2: complex) -> "Quaternion":
        return Quaternion(c1.real, c1.imag, c2.real, c2.imag)

    @staticmethod
    def from_real(x: float) -> "Quaternion":
        return Quaternion(float(x), 0.0, 0.0, 0.0)

    @staticmethod
    def from_json(data) -> "Quaternion":
        a0, a1, a2, a3 = (float(x) for x in data)
        return Quaternion(a0, a1, a2, a3)

    # -- views --------------------------------------------------------
    @property
    def c1(self) -> complex:
        return complex(self.a0, self.a1)

    @property
    def c2(self) -> complex:
        return complex(self.a2, self.a3)

    def to_json(self) -> list[float]:
        return [self.a0, self.a1, self.a2, self.a3]

    def re(self) -> float:
        return self.a0

    def im(self) -> "Quaternion":
        return Quaternion(0.0, self.a1, self.a2, self.a3)

    def im_vec(self) -> "ImVector3":
        return ImVector3(self.a1, self.a2, self.a3)

    # -- algebra ------------------------------------------------------
    def conj(self) -> "Quaternion":
        return Quaternion(self.a0, -self.a1, -self.a2, -self.a3)

    def norm2(self) -> float:
        return self.a0 * self.a0 + self.a1 * self.a1 + self.a2 * self.a2 + self.a3 * self.a3

    def __abs__(self) -> float:
        return math.sqrt(self.norm2())

    def inverse(self) -> "Quaternion":
        n2 = self.norm2()
        if n2 == 0.0:
            raise DomainError("inverse of zero quaternion")
        return Quaternion(self.a0 / n2, -self.a1 / n2, -self.a2 / n2, -self.a3 / n2)

    def __add__(self, other):
        other = _coerce(other)
        return Quaternion(self.a0 + other.a0, self.a1 + other.a1,
                          self.a2 + other.a2, self.a3 + other.a3)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return Quaternion(self.a0 - other.a0, self.a1 - other.a1,
                          self.a2 - other.a2, self.a3 - other.a3)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __neg__(self):
        return Quaternion(-self.a0, -self.a1, -self.a2, -self.a3)

    def __mul__(self, other):
        q = _coerce(other)
        p = self
        return Quaternion(
            p.a0 * q.a0 - p.a1 * q.a1 - p.a2 * q.a2 - p.a3 * q.a3,
            p.a0 * q.a1 + p.a1 * q.a0 + p.a2 * q.a3 - p.a3 * q.a2,
            p.a0 * q.a2 - p.a1 * q.a3 + p.a2 * q.a0 + p.a3 * q.a1,
            p.a0 * q.a3 + p.a1 * q.a2 - p.a2 * q.a1 + p.a3 * q.a0,
        )

    def __rmul__(self, other):
        return _coerce(other) * self

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            return Quaternion(self.a0 / other, self.a1 / other,
                              self.a2 / other, self.a3 / other)
        return self * _coerce(other).inverse()

    # -- classification ----------------------------------------------
    def is_real(self, eps: float = CLASSIFY_EPS) -> bool:
        t = eps * (1.0 + abs(self))
        return abs(self.a1) <= t and abs(self.a2) <= t and abs(self.a3) <= t

    def is_complex(self, eps: float = CLASSIFY_EPS) -> bool:
        t = eps * (1.0 + abs(self))
        return abs(self.a2) <= t and abs(self.a3) <= t

    def isclose(self, other: "Quaternion", tol: float = 1e-9) -> bool:
        return abs(self - other) <= tol * (1.0 + abs(self) + abs(other))


ZERO = Quaternion()
ONE = Quaternion(1.0)
I = Quaternion(0.0, 1.0)
J = Quaternion(0.0, 0.0, 1.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


def _coerce(x) -> Quaternion:
    if isinstance(x, Quaternion):
        return x
    if isinstance(x, (int, float)):
        return Quaternion(float(x))
    if isinstance(x, complex):
        return Quaternion(x.real, x.imag)
    raise TypeError(f"cannot interpret {x!r} as a quaternion")


def quat(x) -> Quaternion:
    """Coerce a real, complex or quaternion value to Quaternion."""
    return _coerce(x)


@dataclass(frozen=True, slots=True)
class ImVector3:
    """Purely imaginary quaternion v = x*i + y*j + z*k seen as a vector
    in R^3."""

    x: float
    y: float
    z: float

    def to_quaternion(self) -> Quaternion:
        return Quaternion(0.0, self.x, self.y, self.z)

    def norm(self) -> float:
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)

    def dot(self, other: "ImVector3") -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def cross(self, other: "ImVector3") -> "ImVector3":
        return ImVector3(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )

    def is_independent_of(self, other: "ImVector3",
                          eps: float = DEPENDENCE_EPS) -> bool:
        return self.cross(other).norm() > eps * self.norm() * other.norm()


def check_unit(q: Quaternion, eps: float = 1e-9) -> Quaternion:
    """Assert |q| = 1 within eps and return q renormalized exactly."""
    n = abs(q)
    if abs(n - 1.0) > eps:
        raise DomainError(f"expected unit quaternion, got |q| = {n}")
    return q / n


def rotation_matrix(mu: Quaternion) -> np.ndarray:
    """The SO(3) matrix acting on imaginary parts by v -> conj(mu) v mu."""
    mu = check_unit(mu)
    u0, u1, u2, u3 = mu.a0, mu.a1, mu.a2, mu.a3
    return np.array([
        [u1 * u1 + u0 * u0 - u3 * u3 - u2 * u2,
         2 * u1 * u2 + 2 * u0 * u3,
         2 * u1 * u3 - 2 * u0 * u2],
        [2 * u1 * u2 - 2 * u0 * u3,
         u2 * u2 - u3 * u3 + u0 * u0 - u1 * u1,
         2 * u2 * u3 + 2 * u0 * u1],
        [2 * u1 * u3 + 2 * u0 * u2,
         2 * u2 * u3 - 2 * u0 * u1,
         u3 * u3 - u2 * u2 - u1 * u1 + u0 * u0],
    ])


def nu(v1: ImVector3) -> Quaternion:
    """Unit quaternion sending the imaginary vector v1 to |v1| * i by
    conjugation.

    Two-branch formula: if v1 is a negative multiple of i the generic
    branch degenerates and j is used instead.
    """
    x1, r = v1.x, v1.norm()
    if r == 0.0:
        raise DomainError("nu of zero vector")
    if x1 < 0.0 and v1.y == 0.0 and v1.z == 0.0:
        return J
    denom = 2.0 * r * (r + x1)
    if denom <= 0.0:
        # x1 == -r up to rounding: same degenerate direction as above
        return J
    return (r * I + v1.to_quaternion()) / math.sqrt(denom)


def mu(v1: ImVector3, v2: ImVector3) -> Quaternion:
    """Unit quaternion (unique up to sign) conjugating v1 onto the positive
    i-axis and v2 into the upper i-j half plane.

    Raises DegenerateInputError when v1 and v2 are linearly dependent;
    callers should fall back to `nu`.
    """
    if not v1.is_independent_of(v2):
        raise DegenerateInputError("imaginary parts are linearly dependent")
    n = nu(v1)
    w = n.conj() * v2.to_quaternion() * n
    c2 = complex(w.a2, w.a3)
    if c2 == 0:
        raise DegenerateInputError("imaginary parts are linearly dependent")
    phase = cmath.sqrt(c2 / abs(c2))
    m = n * Quaternion(phase.real, phase.imag)
    return canonical_sign(m)


def canonical_sign(q: Quaternion) -> Quaternion:
    """Pick the representative of {q, -q} with Re >= 0, breaking ties by
    the first nonzero imaginary component being positive."""
    for comp in (q.a0, q.a1, q.a2, q.a3):
        if comp > 0.0:
            return q
        if comp < 0.0:
            return -q
    return q


# Stratum tags, serialized exactly as reported by the CLI.  Indices are
# 1-based positions in the vector being normalized.
def tag_ZR() -> str:
    return "Z_R"


def tag_ZC(i: int) -> str:
    return f"Z_C({i})"


def tag_Z(i: int, j: int) -> str:
    return f"Z({i},{j})"


def tag_PC() -> str:
    return "P_C"


def tag_P(j: int) -> str:
    return f"P({j})"


def conjugate_vector(mu_: Quaternion, v: list[Quaternion]) -> list[Quaternion]:
    mc = mu_.conj()
    return [mc * q * mu_ for q in v]


def rotation_normalize_vector(v, eps: float = CLASSIFY_EPS):
    """Canonical representative of the conjugation orbit of a quaternion
    vector under unit quaternions.

    Scans for the first entry with nonzero imaginary part, then for the
    first later entry whose imaginary part is independent of it; rotates
    the first onto the i-axis (and the second into the i-j half plane).
    Returns (mu, normalized entries, stratum tag).  The result depends
    only on the orbit of v.
    """
    v = [quat(q) for q in v]
    if not v:
        raise DomainError("empty vector")

    first = None
    for idx, q in enumerate(v):
        if not q.is_real(eps):
            first = idx
            break
    if first is None:
        return ONE, list(v), tag_ZR()

    ref = v[first].im_vec()
    second = None
    for idx in range(first + 1, len(v)):
        q = v[idx]
        if q.is_real(eps):
            continue
        if ref.is_independent_of(q.im_vec()):
            second = idx
            break

    if second is None:
        rot = canonical_sign(nu(ref))
        tag = tag_PC() if first == 0 else tag_ZC(first + 1)
    else:
        rot = mu(ref, v[second].im_vec())
        tag = tag_P(second + 1) if first == 0 else tag_Z(first + 1, second + 1)
    return rot, conjugate_vector(rot, v), tag
