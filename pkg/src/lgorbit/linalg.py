"""Exact linear algebra over the rationals.

Dense matrices with Fraction entries, plus subspaces carried in canonical
reduced-echelon form so that equality of subspaces is literal equality of
basis matrices.  Every dimension in this project stays tiny (a few dozen at
most), so plain Gaussian elimination over reduced fractions is the whole
story; there is no floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DimensionMismatch

ZERO = Fraction(0)
ONE = Fraction(1)


def as_fraction(value) -> Fraction:
    """Coerce int / "p/q" string / Fraction to Fraction.  Floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}: {value!r}")


def format_fraction(q: Fraction) -> str:
    """Render as "p" or "p/q" with q > 0."""
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class QMatrix:
    """Immutable dense matrix over Q (row-major tuples)."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows_data, cols=None):
        data = tuple(tuple(as_fraction(x) for x in row) for row in rows_data)
        if data:
            if cols is None:
                cols = len(data[0])
            for row in data:
                if len(row) != cols:
                    raise DimensionMismatch(f"ragged rows: {len(row)} vs {cols}")
        elif cols is None:
            raise DimensionMismatch("a matrix with no rows needs an explicit column count")
        self.rows = len(data)
        self.cols = cols
        self.data = data

    @classmethod
    def _raw(cls, data, rows, cols):
        """Internal constructor for entries already known to be Fractions."""
        matrix = cls.__new__(cls)
        matrix.rows = rows
        matrix.cols = cols
        matrix.data = data
        return matrix

    @classmethod
    def identity(cls, n):
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def zero(cls, rows, cols):
        return cls([[ZERO] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def diagonal(cls, values):
        vals = [as_fraction(v) for v in values]
        n = len(vals)
        return cls([[vals[i] if i == j else ZERO for j in range(n)] for i in range(n)], cols=n)

    def __getitem__(self, key):
        i, j = key
        return self.data[i][j]

    def row(self, i):
        return self.data[i]

    def column(self, j):
        return tuple(r[j] for r in self.data)

    def transpose(self):
        return QMatrix([self.column(j) for j in range(self.cols)], cols=self.rows)

    def is_square(self):
        return self.rows == self.cols

    def is_zero(self):
        return all(x == 0 for row in self.data for x in row)

    def __eq__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        return self.rows == other.rows and self.cols == other.cols and self.data == other.data

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    def __repr__(self):
        body = "; ".join(" ".join(format_fraction(x) for x in row) for row in self.data)
        return f"QMatrix({self.rows}x{self.cols}: {body})"

    def __add__(self, other):
        self._same_shape(other)
        return QMatrix(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)],
            cols=self.cols,
        )

    def __sub__(self, other):
        self._same_shape(other)
        return QMatrix(
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)],
            cols=self.cols,
        )

    def __neg__(self):
        return QMatrix([[-x for x in row] for row in self.data], cols=self.cols)

    def scale(self, c):
        c = as_fraction(c)
        return QMatrix([[c * x for x in row] for row in self.data], cols=self.cols)

    def _same_shape(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise DimensionMismatch(
                f"shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )

    def __mul__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        # accumulate row-by-row, skipping zero entries (powers of nilpotent
        # matrices and echelon bases are sparse in practice)
        odata = other.data
        out = []
        for row in self.data:
            acc = [ZERO] * other.cols
            for k, a in enumerate(row):
                if a:
                    for j, b in enumerate(odata[k]):
                        if b:
                            acc[j] = acc[j] + a * b
            out.append(tuple(acc))
        return QMatrix._raw(tuple(out), self.rows, other.cols)

    def __pow__(self, k):
        if not self.is_square():
            raise DimensionMismatch("powers need a square matrix")
        if k < 0:
            raise ValueError("negative powers are not supported")
        result = QMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def apply(self, vec):
        """Matrix-vector product; vec has length `cols`."""
        vals = [as_fraction(v) for v in vec]
        if len(vals) != self.cols:
            raise DimensionMismatch(f"vector length {len(vals)} vs {self.cols} columns")
        out = []
        for row in self.data:
            acc = ZERO
            for a, v in zip(row, vals):
                if a and v:
                    acc = acc + a * v
            out.append(acc)
        return tuple(out)

    def trace(self):
        if not self.is_square():
            raise DimensionMismatch("trace needs a square matrix")
        return sum((self.data[i][i] for i in range(self.rows)), ZERO)

    def rref(self):
        """Reduced row echelon form and the tuple of pivot columns."""
        m = [list(row) for row in self.data]
        pivots = []
        r = 0
        for c in range(self.cols):
            if r == self.rows:
                break
            pivot_row = next((i for i in range(r, self.rows) if m[i][c] != 0), None)
            if pivot_row is None:
                continue
            m[r], m[pivot_row] = m[pivot_row], m[r]
            inv = m[r][c]
            if inv != 1:
                m[r] = [x / inv for x in m[r]]
            pivot = m[r]
            for i in range(self.rows):
                if i != r:
                    f = m[i][c]
                    if f:
                        row_i = m[i]
                        for j, b in enumerate(pivot):
                            if b:
                                row_i[j] = row_i[j] - f * b
            pivots.append(c)
            r += 1
        return QMatrix._raw(tuple(tuple(row) for row in m), self.rows, self.cols), tuple(pivots)

    def rank(self):
        return len(self.rref()[1])

    def kernel(self):
        """Right kernel {v : M v = 0} as a canonical Subspace of Q^cols."""
        reduced, pivots = self.rref()
        free = [c for c in range(self.cols) if c not in pivots]
        basis = []
        for fc in free:
            v = [ZERO] * self.cols
            v[fc] = ONE
            for r_i, pc in enumerate(pivots):
                v[pc] = -reduced[r_i, fc]
            basis.append(v)
        return Subspace.span(self.cols, basis)

    def det(self):
        if not self.is_square():
            raise DimensionMismatch("determinant needs a square matrix")
        m = [list(row) for row in self.data]
        n = self.rows
        sign = 1
        det = ONE
        for c in range(n):
            pivot_row = next((i for i in range(c, n) if m[i][c] != 0), None)
            if pivot_row is None:
                return ZERO
            if pivot_row != c:
                m[c], m[pivot_row] = m[pivot_row], m[c]
                sign = -sign
            det *= m[c][c]
            inv = m[c][c]
            for i in range(c + 1, n):
                if m[i][c] != 0:
                    f = m[i][c] / inv
                    m[i] = [a - f * b for a, b in zip(m[i], m[c])]
        return det * sign

    def inverse(self):
        if not self.is_square():
            raise DimensionMismatch("inverse needs a square matrix")
        n = self.rows
        augmented = QMatrix(
            [list(self.data[i]) + [ONE if i == j else ZERO for j in range(n)] for i in range(n)],
            cols=2 * n,
        )
        reduced, pivots = augmented.rref()
        if pivots[:n] != tuple(range(n)):
            raise ValueError("matrix is singular")
        return QMatrix([reduced.row(i)[n:] for i in range(n)], cols=n)

    def charpoly(self):
        """Monic characteristic polynomial, coefficients in descending degree.

        Faddeev-LeVerrier recursion; exact over Q.
        """
        if not self.is_square():
            raise DimensionMismatch("characteristic polynomial needs a square matrix")
        n = self.rows
        coeffs = [ONE]
        m = self
        ident = QMatrix.identity(n)
        for j in range(1, n + 1):
            c = -m.trace() / j
            coeffs.append(c)
            if j < n:
                m = self * (m + ident.scale(c))
        return tuple(coeffs)

    def to_json(self):
        return [[format_fraction(x) for x in row] for row in self.data]

    @classmethod
    def from_json(cls, rows, cols=None):
        return cls(rows, cols=cols)


class Subspace:
    """Subspace of Q^n held as a canonical reduced-echelon row basis.

    Two equal subspaces have identical basis matrices, so `==` is exact
    subspace equality with no notion of tolerance.
    """

    __slots__ = ("ambient", "basis", "pivots", "_annihilator")

    def __init__(self, ambient, basis, pivots=None):
        # `basis` must already be canonical; use span() to build from raw rows.
        self.ambient = ambient
        self.basis = basis
        if pivots is None:
            pivots = tuple(
                next(j for j, x in enumerate(basis.row(i)) if x != 0)
                for i in range(basis.rows)
            )
        self.pivots = pivots
        self._annihilator = None

    @classmethod
    def span(cls, ambient, rows):
        mat = QMatrix(rows, cols=ambient) if rows else QMatrix([], cols=ambient)
        reduced, pivots = mat.rref()
        kept = [reduced.row(i) for i in range(len(pivots))]
        return cls(ambient, QMatrix(kept, cols=ambient), pivots)

    @classmethod
    def zero(cls, ambient):
        return cls.span(ambient, [])

    @classmethod
    def full(cls, ambient):
        return cls(ambient, QMatrix.identity(ambient))

    @property
    def dim(self):
        return self.basis.rows

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient, self.basis))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of Q^{self.ambient})"

    def contains(self, vec):
        v = [as_fraction(x) for x in vec]
        if len(v) != self.ambient:
            raise DimensionMismatch(f"vector length {len(v)} vs ambient {self.ambient}")
        for r_i, pc in enumerate(self.pivots):
            if v[pc] != 0:
                f = v[pc]
                v = [a - f * b for a, b in zip(v, self.basis.row(r_i))]
        return all(x == 0 for x in v)

    def is_subspace_of(self, other):
        self._same_ambient(other)
        if self.dim > other.dim:
            return False
        return all(other.contains(self.basis.row(i)) for i in range(self.dim))

    def _same_ambient(self, other):
        if self.ambient != other.ambient:
            raise DimensionMismatch(f"ambient mismatch: {self.ambient} vs {other.ambient}")

    def sum_with(self, other):
        self._same_ambient(other)
        rows = [self.basis.row(i) for i in range(self.dim)]
        rows += [other.basis.row(i) for i in range(other.dim)]
        return Subspace.span(self.ambient, rows)

    def intersect(self, other):
        """Zassenhaus: reduce [A|A; B|0]; rows with vanishing left half span A cap B."""
        self._same_ambient(other)
        n = self.ambient
        rows = [list(self.basis.row(i)) * 2 for i in range(self.dim)]
        rows += [list(other.basis.row(i)) + [ZERO] * n for i in range(other.dim)]
        if not rows:
            return Subspace.zero(n)
        reduced, pivots = QMatrix(rows, cols=2 * n).rref()
        out = []
        for i in range(len(pivots)):
            row = reduced.row(i)
            if all(x == 0 for x in row[:n]):
                out.append(row[n:])
        return Subspace.span(n, out)

    def map_by(self, matrix):
        """Image of this subspace under `matrix` (ambient must match matrix.cols)."""
        if matrix.cols != self.ambient:
            raise DimensionMismatch(f"map has {matrix.cols} columns, ambient is {self.ambient}")
        rows = [matrix.apply(self.basis.row(i)) for i in range(self.dim)]
        return Subspace.span(matrix.rows, rows)

    def annihilator(self):
        """Matrix K with: v lies in this subspace iff K v = 0 (cached)."""
        if self._annihilator is None:
            ker = self.basis.kernel() if self.dim else Subspace.full(self.ambient)
            self._annihilator = ker.basis
        return self._annihilator

    def preimage(self, matrix):
        """{v : matrix v in self}; matrix.rows must equal the ambient dimension."""
        if matrix.rows != self.ambient:
            raise DimensionMismatch(f"map has {matrix.rows} rows, ambient is {self.ambient}")
        k = self.annihilator()
        if k.rows == 0:
            return Subspace.full(matrix.cols)
        return (k * matrix).kernel()

    def to_json(self):
        return self.basis.to_json()


def rank_and_kernel(matrix):
    """Exact rank over Q together with the right kernel as a canonical subspace."""
    return matrix.rank(), matrix.kernel()


def subspace_combine(mode, first, second=None, mapping=None):
    """Dispatcher for subspace arithmetic: "sum", "intersect", or "preimage".

    "sum" and "intersect" take two subspaces of the same ambient space;
    "preimage" takes a subspace and a matrix and returns {v : mapping v in first}.
    """
    if mode == "sum":
        if second is None:
            raise ValueError("sum needs a second subspace")
        return first.sum_with(second)
    if mode == "intersect":
        if second is None:
            raise ValueError("intersect needs a second subspace")
        return first.intersect(second)
    if mode == "preimage":
        if mapping is None:
            raise ValueError("preimage needs a matrix")
        return first.preimage(mapping)
    raise ValueError(f"unknown mode {mode!r}")
