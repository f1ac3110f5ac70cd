"""Dense quaternion matrices stored as a pair of complex arrays.

A quaternion matrix A is kept as A = C1 + C2*j with complex C1, C2.
The complex adjoint embedding

    A  ->  [[ C1,        C2       ],
            [-conj(C2),  conj(C1) ]]

is a *-algebra homomorphism, which lets eigenvalue, rank and inverse
computations be delegated to numpy's complex kernels.  Hermitian
quaternion matrices map to Hermitian complex matrices with each real
eigenvalue doubled.
"""

from __future__ import annotations

import numpy as np

from .errors import UsageError
from .quat import Quaternion, quat


class QMatrix:
    __slots__ = ("c1", "c2")

    def __init__(self, c1: np.ndarray, c2: np.ndarray):
        c1 = np.asarray(c1, dtype=complex)
        c2 = np.asarray(c2, dtype=complex)
        if c1.shape != c2.shape or c1.ndim != 2:
            raise UsageError("QMatrix needs two complex 2-d arrays of equal shape")
        self.c1 = c1
        self.c2 = c2

    # -- constructors -------------------------------------------------
    @staticmethod
    def zeros(rows: int, cols: int) -> "QMatrix":
        return QMatrix(np.zeros((rows, cols), dtype=complex),
                       np.zeros((rows, cols), dtype=complex))

    @staticmethod
    def eye(n: int) -> "QMatrix":
        return QMatrix(np.eye(n, dtype=complex), np.zeros((n, n), dtype=complex))

    @staticmethod
    def from_entries(rows) -> "QMatrix":
        """Build from a nested sequence of Quaternion-coercible entries."""
        qrows = [[quat(x) for x in row] for row in rows]
        c1 = np.array([[q.c1 for q in row] for row in qrows], dtype=complex)
        c2 = np.array([[q.c2 for q in row] for row in qrows], dtype=complex)
        return QMatrix(c1, c2)

    @staticmethod
    def column(entries) -> "QMatrix":
        return QMatrix.from_entries([[q] for q in entries])

    @staticmethod
    def diagonal(entries) -> "QMatrix":
        qs = [quat(x) for x in entries]
        n = len(qs)
        m = QMatrix.zeros(n, n)
        for i, q in enumerate(qs):
            m.c1[i, i] = q.c1
            m.c2[i, i] = q.c2
        return m

    @staticmethod
    def real(arr) -> "QMatrix":
        arr = np.asarray(arr, dtype=float)
        return QMatrix(arr.astype(complex), np.zeros_like(arr, dtype=complex))

    # -- shape / access ----------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.c1.shape

    def entry(self, i: int, j: int) -> Quaternion:
        return Quaternion.from_complex_pair(complex(self.c1[i, j]),
                                            complex(self.c2[i, j]))

    def set_entry(self, i: int, j: int, q) -> None:
        q = quat(q)
        self.c1[i, j] = q.c1
        self.c2[i, j] = q.c2

    def to_entries(self) -> list[list[Quaternion]]:
        rows, cols = self.shape
        return [[self.entry(i, j) for j in range(cols)] for i in range(rows)]

    def col(self, j: int) -> "QMatrix":
        return QMatrix(self.c1[:, j:j + 1].copy(), self.c2[:, j:j + 1].copy())

    def cols(self, idx) -> "QMatrix":
        idx = list(idx)
        return QMatrix(self.c1[:, idx].copy(), self.c2[:, idx].copy())

    def hstack(self, other: "QMatrix") -> "QMatrix":
        return QMatrix(np.hstack([self.c1, other.c1]),
                       np.hstack([self.c2, other.c2]))

    def copy(self) -> "QMatrix":
        return QMatrix(self.c1.copy(), self.c2.copy())

    # -- algebra ------------------------------------------------------
    def __add__(self, other: "QMatrix") -> "QMatrix":
        return QMatrix(self.c1 + other.c1, self.c2 + other.c2)

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        return QMatrix(self.c1 - other.c1, self.c2 - other.c2)

    def __neg__(self) -> "QMatrix":
        return QMatrix(-self.c1, -self.c2)

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        a1, a2, b1, b2 = self.c1, self.c2, other.c1, other.c2
        return QMatrix(a1 @ b1 - a2 @ np.conj(b2),
                       a1 @ b2 + a2 @ np.conj(b1))

    def scale(self, x: float) -> "QMatrix":
        return QMatrix(self.c1 * x, self.c2 * x)

    def right_scalar(self, q) -> "QMatrix":
        """Right multiplication by a quaternion scalar (column action)."""
        q = quat(q)
        return QMatrix(self.c1 * q.c1 - self.c2 * np.conj(complex(q.c2)),
                       self.c1 * q.c2 + self.c2 * np.conj(complex(q.c1)))

    def left_scalar(self, q) -> "QMatrix":
        q = quat(q)
        l1, l2 = q.c1, q.c2
        return QMatrix(l1 * self.c1 - l2 * np.conj(self.c2),
                       l1 * self.c2 + l2 * np.conj(self.c1))

    @property
    def h(self) -> "QMatrix":
        """Conjugate transpose."""
        return QMatrix(np.conj(self.c1.T), -self.c2.T)

    def adjoint(self) -> np.ndarray:
        """Complex adjoint embedding, shape (2r, 2c)."""
        top = np.hstack([self.c1, self.c2])
        bot = np.hstack([-np.conj(self.c2), np.conj(self.c1)])
        return np.vstack([top, bot])

    @staticmethod
    def from_adjoint(m: np.ndarray) -> "QMatrix":
        r2, c2 = m.shape
        r, c = r2 // 2, c2 // 2
        return QMatrix(m[:r, :c], m[:r, c:])

    def inv(self) -> "QMatrix":
        return QMatrix.from_adjoint(np.linalg.inv(self.adjoint()))

    def norm(self) -> float:
        """Frobenius norm."""
        return float(np.sqrt(np.sum(np.abs(self.c1) ** 2 + np.abs(self.c2) ** 2)))

    def is_hermitian(self, tol: float = 1e-10) -> bool:
        return (self - self.h).norm() <= tol * max(1.0, self.norm())

    def rank(self, tol_rel: float = 1e-9) -> int:
        """Quaternionic rank via the adjoint's singular values."""
        s = np.linalg.svd(self.adjoint(), compute_uv=False)
        if s.size == 0 or s[0] == 0.0:
            return 0
        r = int(np.sum(s > tol_rel * s[0]))
        # adjoint rank is exactly twice the quaternionic rank
        return (r + 1) // 2

    def __repr__(self) -> str:
        rows = self.to_entries()
        body = ";\n ".join(", ".join(format_quat(q) for q in row) for row in rows)
        return f"QMatrix([\n {body}\n])"


def format_quat(q: Quaternion) -> str:
    return f"({q.a0:+.4g}{q.a1:+.4g}i{q.a2:+.4g}j{q.a3:+.4g}k)"
