"""Dense exact linear algebra over cyclotomic field elements.

Matrices are immutable; every operation allocates.  Gaussian elimination
pivots on the first nonzero entry in column order, so all results are
deterministic and reproducible.  Eigenvectors are kept unnormalised with
their exact squared norms tracked separately; eigenprojectors are assembled
as sum v v^dagger / <v, v>, which keeps every entry inside the field even
when the normalisation constant itself is irrational.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .cyclotomic import CycElement, GaloisAutomorphism, RationalLike

Scalar = Union[CycElement, int, Fraction, str]


def _as_cyc(x: Scalar) -> CycElement:
    if isinstance(x, CycElement):
        return x
    return CycElement.rational(x)


class Polynomial:
    """Polynomial with CycElement coefficients, ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar]):
        cs = [_as_cyc(c) for c in coeffs]
        n = math.lcm(*(c.conductor for c in cs)) if cs else 1
        cs = [c.lift(n) for c in cs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs: tuple[CycElement, ...] = tuple(cs)

    @staticmethod
    def zero(conductor: int = 1) -> "Polynomial":
        return Polynomial(())

    @staticmethod
    def one(conductor: int = 1) -> "Polynomial":
        return Polynomial((CycElement.one(conductor),))

    @staticmethod
    def x_power(k: int, conductor: int = 1) -> "Polynomial":
        return Polynomial([CycElement.zero(conductor)] * k + [CycElement.one(conductor)])

    @staticmethod
    def from_rational_coeffs(coeffs: Iterable[RationalLike]) -> "Polynomial":
        return Polynomial([CycElement.rational(c) for c in coeffs])

    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else -1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == CycElement.one()

    def leading(self) -> CycElement:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Polynomial(out)

    def __neg__(self) -> "Polynomial":
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if self.is_zero() or other.is_zero():
            return Polynomial(())
        out = [CycElement.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Polynomial(out)

    def scale(self, s: Scalar) -> "Polynomial":
        s = _as_cyc(s)
        return Polynomial([c * s for c in self.coeffs])

    def __pow__(self, k: int) -> "Polynomial":
        out = Polynomial.one()
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, value):
        """Evaluate at a CycElement or an ExactMatrix (Horner)."""
        if isinstance(value, ExactMatrix):
            acc = ExactMatrix.zeros(value.rows, value.cols)
            for c in reversed(self.coeffs):
                acc = value @ acc + ExactMatrix.identity(value.rows).scale(c)
            return acc
        value = _as_cyc(value)
        acc = CycElement.zero()
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        if len(self.coeffs) != len(other.coeffs):
            return False
        return all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __repr__(self) -> str:
        if self.is_zero():
            return "Polynomial(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            if i == 0:
                terms.append(f"({c})")
            else:
                terms.append(f"({c})*x^{i}" if i > 1 else f"({c})*x")
        return "Polynomial(" + " + ".join(terms) + ")"


class ExactMatrix:
    """Immutable dense matrix of CycElements sharing one conductor."""

    __slots__ = ("rows", "cols", "entries", "conductor")

    def __init__(self, rows: int, cols: int, entries: Sequence[Scalar]):
        if rows < 1 or cols < 1:
            raise ValueError("matrix dimensions must be positive")
        es = [_as_cyc(e) for e in entries]
        if len(es) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(es)}")
        n = math.lcm(*(e.conductor for e in es))
        self.rows = rows
        self.cols = cols
        self.conductor = n
        self.entries: tuple[CycElement, ...] = tuple(e.lift(n) for e in es)

    # -- constructors --------------------------------------------------------

    @staticmethod
    def from_rows(rows: Sequence[Sequence[Scalar]]) -> "ExactMatrix":
        r = len(rows)
        c = len(rows[0])
        if any(len(row) != c for row in rows):
            raise ValueError("ragged rows")
        return ExactMatrix(r, c, [x for row in rows for x in row])

    @staticmethod
    def identity(n: int) -> "ExactMatrix":
        return ExactMatrix(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @staticmethod
    def zeros(rows: int, cols: int) -> "ExactMatrix":
        return ExactMatrix(rows, cols, [0] * (rows * cols))

    @staticmethod
    def diagonal(values: Sequence[Scalar]) -> "ExactMatrix":
        n = len(values)
        return ExactMatrix(n, n, [values[i] if i == j else 0 for i in range(n) for j in range(n)])

    @staticmethod
    def column(values: Sequence[Scalar]) -> "ExactMatrix":
        return ExactMatrix(len(values), 1, list(values))

    @staticmethod
    def basis_matrix(n: int, i: int, j: int) -> "ExactMatrix":
        """E_ij: single 1 at (i, j)."""
        return ExactMatrix(n, n, [1 if (r, c) == (i, j) else 0 for r in range(n) for c in range(n)])

    @staticmethod
    def permutation(images: Sequence[int]) -> "ExactMatrix":
        """P with P |j> = |images[j]>."""
        n = len(images)
        if sorted(images) != list(range(n)):
            raise ValueError("not a permutation")
        entries = [0] * (n * n)
        for j, i in enumerate(images):
            entries[i * n + j] = 1
        return ExactMatrix(n, n, entries)

    # -- access ---------------------------------------------------------------

    def entry(self, i: int, j: int) -> CycElement:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list[CycElement]:
        return list(self.entries[i * self.cols : (i + 1) * self.cols])

    def column_vector(self, j: int) -> list[CycElement]:
        return [self.entry(i, j) for i in range(self.rows)]

    def is_square(self) -> bool:
        return self.rows == self.cols

    # -- arithmetic -------------------------------------------------------------

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._same_shape(other)
        return ExactMatrix(self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._same_shape(other)
        return ExactMatrix(self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix(self.rows, self.cols, [-a for a in self.entries])

    def scale(self, s: Scalar) -> "ExactMatrix":
        s = _as_cyc(s)
        return ExactMatrix(self.rows, self.cols, [a * s for a in self.entries])

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.shape()} @ {other.shape()}")
        n = math.lcm(self.conductor, other.conductor)
        a = [e.lift(n) for e in self.entries]
        b = [e.lift(n) for e in other.entries]
        out = []
        oc = other.cols
        for i in range(self.rows):
            arow = a[i * self.cols : (i + 1) * self.cols]
            for j in range(oc):
                acc = CycElement.zero(n)
                for k in range(self.cols):
                    if arow[k].coeffs:
                        x = b[k * oc + j]
                        if x.coeffs:
                            acc = acc + arow[k] * x
                out.append(acc)
        return ExactMatrix(self.rows, oc, out)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.cols, self.rows, [self.entry(j, i) for i in range(self.cols) for j in range(self.rows)])

    def conj(self) -> "ExactMatrix":
        return ExactMatrix(self.rows, self.cols, [a.conj() for a in self.entries])

    def dagger(self) -> "ExactMatrix":
        return self.conj().transpose()

    def tensor(self, other: "ExactMatrix") -> "ExactMatrix":
        """Kronecker product in the |a> tensor |b> = |a*n + b> convention."""
        r, c = self.rows * other.rows, self.cols * other.cols
        out = [None] * (r * c)
        for i1 in range(self.rows):
            for j1 in range(self.cols):
                a = self.entry(i1, j1)
                for i2 in range(other.rows):
                    for j2 in range(other.cols):
                        out[(i1 * other.rows + i2) * c + (j1 * other.cols + j2)] = a * other.entry(i2, j2)
        return ExactMatrix(r, c, out)  # type: ignore[arg-type]

    def direct_sum(self, other: "ExactMatrix") -> "ExactMatrix":
        r, c = self.rows + other.rows, self.cols + other.cols
        out = [CycElement.zero()] * (r * c)
        for i in range(self.rows):
            for j in range(self.cols):
                out[i * c + j] = self.entry(i, j)
        for i in range(other.rows):
            for j in range(other.cols):
                out[(self.rows + i) * c + (self.cols + j)] = other.entry(i, j)
        return ExactMatrix(r, c, out)

    def trace(self) -> CycElement:
        if not self.is_square():
            raise ValueError("trace of a non-square matrix")
        acc = CycElement.zero(self.conductor)
        for i in range(self.rows):
            acc = acc + self.entry(i, i)
        return acc

    def galois(self, g: GaloisAutomorphism) -> "ExactMatrix":
        return ExactMatrix(self.rows, self.cols, [g(a) for a in self.entries])

    # -- predicates ---------------------------------------------------------------

    def _same_shape(self, other: "ExactMatrix"):
        if self.shape() != other.shape():
            raise ValueError(f"shape mismatch: {self.shape()} vs {other.shape()}")

    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries)

    def is_identity(self) -> bool:
        return self.is_square() and self == ExactMatrix.identity(self.rows)

    def is_normal(self) -> bool:
        self._require_square()
        return self @ self.dagger() == self.dagger() @ self

    def is_hermitian(self) -> bool:
        self._require_square()
        return self == self.dagger()

    def is_unitary(self) -> bool:
        self._require_square()
        d = self.dagger()
        return (self @ d).is_identity() and (d @ self).is_identity()

    def is_orthogonal_projector(self) -> bool:
        self._require_square()
        return self == self.dagger() and self @ self == self

    def _require_square(self):
        if not self.is_square():
            raise ValueError("operation requires a square matrix")

    def predicates(self) -> dict[str, bool]:
        return {
            "is_normal": self.is_normal(),
            "is_unitary": self.is_unitary(),
            "is_hermitian": self.is_hermitian(),
            "is_orthogonal_projector": self.is_orthogonal_projector(),
        }

    # -- higher-level operations -----------------------------------------------------

    def char_poly(self) -> Polynomial:
        """det(xI - A) by the Faddeev-LeVerrier recurrence; monic."""
        self._require_square()
        n = self.rows
        ident = ExactMatrix.identity(n)
        m = ExactMatrix.zeros(n, n)
        cs = [CycElement.one(self.conductor)]
        for k in range(1, n + 1):
            m = self @ m + ident.scale(cs[-1])
            cs.append((self @ m).trace() / Fraction(-k))
        # cs[k] is the coefficient of x^(n-k).
        return Polynomial(list(reversed(cs)))

    def determinant(self) -> CycElement:
        cp = self.char_poly()
        det = cp.coeffs[0]
        return det if self.rows % 2 == 0 else -det

    def inverse(self) -> "ExactMatrix":
        self._require_square()
        n = self.rows
        aug = [self.row(i) + ExactMatrix.identity(n).row(i) for i in range(n)]
        for c in range(n):
            piv = next((i for i in range(c, n) if not aug[i][c].is_zero()), None)
            if piv is None:
                raise ZeroDivisionError("matrix is singular")
            aug[c], aug[piv] = aug[piv], aug[c]
            inv = aug[c][c].inverse()
            aug[c] = [x * inv for x in aug[c]]
            for i in range(n):
                if i != c and not aug[i][c].is_zero():
                    f = aug[i][c]
                    aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
        return ExactMatrix.from_rows([r[n:] for r in aug])

    def kernel_basis(self) -> list["ExactMatrix"]:
        """Basis columns of the right kernel, via exact Gaussian elimination."""
        rows = [self.row(i) for i in range(self.rows)]
        nc = self.cols
        piv_of_col: dict[int, int] = {}
        r = 0
        for c in range(nc):
            piv = next((i for i in range(r, self.rows) if not rows[i][c].is_zero()), None)
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            inv = rows[r][c].inverse()
            rows[r] = [x * inv for x in rows[r]]
            for i in range(self.rows):
                if i != r and not rows[i][c].is_zero():
                    f = rows[i][c]
                    rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
            piv_of_col[c] = r
            r += 1
        free_cols = [c for c in range(nc) if c not in piv_of_col]
        out = []
        for fc in free_cols:
            v = [CycElement.zero(self.conductor) for _ in range(nc)]
            v[fc] = CycElement.one(self.conductor)
            for c, pr in piv_of_col.items():
                v[c] = -rows[pr][fc]
            out.append(ExactMatrix.column(v))
        return out

    def eigenspace_for(self, eigenvalue: Scalar) -> "Eigenspace":
        """Exact eigenspace data for a normal matrix (see Eigenspace)."""
        self._require_square()
        lam = _as_cyc(eigenvalue)
        n = math.lcm(self.conductor, lam.conductor)
        shifted = self - ExactMatrix.identity(self.rows).scale(lam)
        kernel = shifted.kernel_basis()
        if not kernel:
            raise ValueError(f"{lam} is not an eigenvalue (multiplicity zero)")
        ortho: list[ExactMatrix] = []
        norms: list[CycElement] = []
        for v in kernel:
            w = v
            for u, nu in zip(ortho, norms):
                overlap = (u.dagger() @ w).entry(0, 0)
                w = w - u.scale(overlap / nu)
            ortho.append(w)
            norms.append((w.dagger() @ w).entry(0, 0))
        proj = ExactMatrix.zeros(self.rows, self.rows)
        for w, nw in zip(ortho, norms):
            proj = proj + (w @ w.dagger()).scale(nw.inverse())
        return Eigenspace(lam.lift(n), tuple(ortho), tuple(norms), proj, len(kernel))

    # -- comparisons / display ------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.shape() != other.shape():
            return False
        return all(a == b for a, b in zip(self.entries, other.entries))

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(self.entry(i, j)) for j in range(self.cols)) for i in range(self.rows))
        return f"ExactMatrix[{body}]"

    def to_complex(self, digits: int = 15) -> list[list[complex]]:
        return [[self.entry(i, j).to_complex(digits) for j in range(self.cols)] for i in range(self.rows)]


@dataclass(frozen=True)
class Eigenspace:
    """Unnormalised orthogonal basis, exact squared norms, and projector.

    The projector sum v v^dagger / <v, v> needs only norm ratios, so its
    entries stay inside the field even when the normalising constants are
    irrational (for example 1/sqrt(3 + sqrt 3)).
    """

    eigenvalue: CycElement
    basis: tuple[ExactMatrix, ...]
    norms_sq: tuple[CycElement, ...]
    projector: ExactMatrix
    multiplicity: int


def swap_matrix(m: int, n: int) -> ExactMatrix:
    """Permutation matrix of |a> tensor |b> -> |b> tensor |a>."""
    if m < 1 or n < 1:
        raise ValueError("dimensions must be positive")
    images = [0] * (m * n)
    for a in range(m):
        for b in range(n):
            images[a * n + b] = b * m + a
    return ExactMatrix.permutation(images)


def mat_galois(g: GaloisAutomorphism, a: ExactMatrix) -> ExactMatrix:
    return a.galois(g)
