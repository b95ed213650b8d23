"""Dense exact linear algebra over the rationals.

Scalars are `fractions.Fraction` (arbitrary precision, canonical reduced
form, positive denominator -- the stdlib type already maintains these
invariants).  Matrices are dense and row-major.  Everything here is pure
and re-entrant; rank/echelon routines go through a fraction-free integer
elimination to keep large eliminations fast.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import DimensionMismatch, SubspaceNotPreserved

Rat = Fraction

QVec = tuple[Fraction, ...]


def rat(x) -> Fraction:
    """Coerce ints, "p/q" strings and Fractions to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot make an exact rational out of {type(x).__name__}")


def vec(entries) -> QVec:
    return tuple(rat(e) for e in entries)


def vec_add(a: QVec, b: QVec) -> QVec:
    if len(a) != len(b):
        raise DimensionMismatch(f"vector lengths {len(a)} != {len(b)}")
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a: QVec, b: QVec) -> QVec:
    if len(a) != len(b):
        raise DimensionMismatch(f"vector lengths {len(a)} != {len(b)}")
    return tuple(x - y for x, y in zip(a, b))


def vec_neg(a: QVec) -> QVec:
    return tuple(-x for x in a)


def vec_scale(c, a: QVec) -> QVec:
    c = rat(c)
    return tuple(c * x for x in a)


def zero_vec(n: int) -> QVec:
    return (Fraction(0),) * n


def unit_vec(n: int, i: int) -> QVec:
    return tuple(Fraction(1 if j == i else 0) for j in range(n))


class MatQ:
    """Dense matrix of Fractions, row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries):
        entries = [rat(e) for e in entries]
        if len(entries) != rows * cols:
            raise DimensionMismatch(
                f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(entries)}"
            )
        self.rows = rows
        self.cols = cols
        self.entries = entries

    # -- constructors -------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "MatQ":
        return cls(rows, cols, [Fraction(0)] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "MatQ":
        m = cls.zeros(n, n)
        for i in range(n):
            m.entries[i * n + i] = Fraction(1)
        return m

    @classmethod
    def from_rows(cls, rows) -> "MatQ":
        rows = [list(r) for r in rows]
        nr = len(rows)
        nc = len(rows[0]) if rows else 0
        if any(len(r) != nc for r in rows):
            raise DimensionMismatch("ragged rows")
        return cls(nr, nc, [e for r in rows for e in r])

    @classmethod
    def from_cols(cls, cols) -> "MatQ":
        return cls.from_rows(cols).transpose() if cols else cls.zeros(0, 0)

    # -- access -------------------------------------------------------

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def __setitem__(self, ij, value):
        i, j = ij
        self.entries[i * self.cols + j] = rat(value)

    def row(self, i: int) -> QVec:
        return tuple(self.entries[i * self.cols : (i + 1) * self.cols])

    def col(self, j: int) -> QVec:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def copy(self) -> "MatQ":
        return MatQ(self.rows, self.cols, list(self.entries))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MatQ)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(self.entries)))

    def __repr__(self) -> str:
        return f"MatQ({self.to_rows()!r})"

    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: "MatQ") -> "MatQ":
        if self.rows != other.rows or self.cols != other.cols:
            raise DimensionMismatch("matrix addition shape mismatch")
        return MatQ(
            self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)]
        )

    def __sub__(self, other: "MatQ") -> "MatQ":
        if self.rows != other.rows or self.cols != other.cols:
            raise DimensionMismatch("matrix subtraction shape mismatch")
        return MatQ(
            self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)]
        )

    def __neg__(self) -> "MatQ":
        return MatQ(self.rows, self.cols, [-a for a in self.entries])

    def scale(self, c) -> "MatQ":
        c = rat(c)
        return MatQ(self.rows, self.cols, [c * a for a in self.entries])

    def __matmul__(self, other: "MatQ") -> "MatQ":
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        out = MatQ.zeros(self.rows, other.cols)
        oc = other.cols
        for i in range(self.rows):
            base = i * self.cols
            for k in range(self.cols):
                a = self.entries[base + k]
                if a == 0:
                    continue
                ob = k * oc
                tb = i * oc
                for j in range(oc):
                    b = other.entries[ob + j]
                    if b != 0:
                        out.entries[tb + j] += a * b
        return out

    def __mul__(self, other):
        if isinstance(other, MatQ):
            return self.__matmul__(other)
        return self.scale(other)

    def apply(self, v: QVec) -> QVec:
        """Matrix-vector product."""
        if len(v) != self.cols:
            raise DimensionMismatch(f"vector length {len(v)} != cols {self.cols}")
        out = []
        for i in range(self.rows):
            base = i * self.cols
            s = Fraction(0)
            for j, x in enumerate(v):
                if x != 0:
                    s += self.entries[base + j] * x
            out.append(s)
        return tuple(out)

    def transpose(self) -> "MatQ":
        out = MatQ.zeros(self.cols, self.rows)
        for i in range(self.rows):
            for j in range(self.cols):
                out.entries[j * self.rows + i] = self.entries[i * self.cols + j]
        return out

    def hstack(self, other: "MatQ") -> "MatQ":
        if self.rows != other.rows:
            raise DimensionMismatch("hstack row mismatch")
        rows = [list(self.row(i)) + list(other.row(i)) for i in range(self.rows)]
        return MatQ.from_rows(rows) if self.rows else MatQ.zeros(0, self.cols + other.cols)


# -- elimination -------------------------------------------------------


def _int_rows(m: MatQ) -> list[list[int]]:
    """Scale each row by the lcm of denominators (rank-preserving)."""
    out = []
    for i in range(m.rows):
        row = m.row(i)
        l = 1
        for e in row:
            d = e.denominator
            l = l * d // gcd(l, d)
        out.append([int(e * l) for e in row])
    return out


def rank(m: MatQ) -> int:
    """Rank via fraction-free integer Gaussian elimination."""
    rows = _int_rows(m)
    nr, nc = m.rows, m.cols
    r = 0
    for c in range(nc):
        piv = None
        for i in range(r, nr):
            if rows[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        pv = prow[c]
        for i in range(r + 1, nr):
            v = rows[i][c]
            if v == 0:
                continue
            ri = rows[i]
            for j in range(c, nc):
                ri[j] = ri[j] * pv - prow[j] * v
            g = 0
            for x in ri:
                g = gcd(g, x)
            if g > 1:
                for j in range(nc):
                    ri[j] //= g
        r += 1
        if r == nr:
            break
    return r


def rref(m: MatQ) -> tuple[MatQ, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    rows = m.to_rows()
    nr, nc = m.rows, m.cols
    pivots: list[int] = []
    r = 0
    for c in range(nc):
        piv = None
        for i in range(r, nr):
            if rows[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(nr):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return MatQ.from_rows(rows) if nr else MatQ.zeros(0, nc), pivots


def nullspace_basis(m: MatQ) -> list[QVec]:
    """Basis of ker(m) as column vectors, in free-column order."""
    r, pivots = rref(m)
    free = [j for j in range(m.cols) if j not in pivots]
    basis = []
    for j in free:
        v = [Fraction(0)] * m.cols
        v[j] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -r[i, j]
        basis.append(tuple(v))
    return basis


def solve(a: MatQ, b: QVec) -> QVec:
    """One exact solution x of a x = b; raises if the system is inconsistent."""
    if len(b) != a.rows:
        raise DimensionMismatch("rhs length mismatch")
    aug = a.hstack(MatQ(a.rows, 1, list(b)))
    r, pivots = rref(aug)
    if a.cols in pivots:
        raise SubspaceNotPreserved("inconsistent linear system")
    x = [Fraction(0)] * a.cols
    for i, pc in enumerate(pivots):
        x[pc] = r[i, a.cols]
    return tuple(x)


def quotient_dim(sub: MatQ, amb_dim: int) -> int:
    """dim of ambient space modulo the span of sub's columns."""
    if sub.rows != amb_dim:
        raise DimensionMismatch(
            f"subspace columns live in dim {sub.rows}, ambient is {amb_dim}"
        )
    return amb_dim - rank(sub)


def _echelon_subspace(k: MatQ) -> tuple[MatQ, list[int]]:
    """Echelon basis (as columns) of the column span of k, plus pivot coords."""
    r, pivots = rref(k.transpose())
    basis = [r.row(i) for i in range(len(pivots))]
    return MatQ.from_cols(basis) if basis else MatQ.zeros(k.rows, 0), pivots


def quotient_coords(k: MatQ):
    """Complement coordinates for the span of k's columns.

    The quotient basis is the set of standard basis vectors at the
    pivot-complement coordinates of the reduced echelon form, making the
    choice deterministic.  Returns (echelon basis matrix, complement
    coordinate list, projector to complement coordinates).
    """
    basis, pivots = _echelon_subspace(k)
    free = [j for j in range(k.rows) if j not in pivots]
    full = basis.hstack(MatQ.from_cols([unit_vec(k.rows, j) for j in free])
                        if free else MatQ.zeros(k.rows, 0))

    def project(v: QVec) -> QVec:
        coeffs = solve(full, v)
        return tuple(coeffs[basis.cols :])

    return basis, free, project


def in_span(k: MatQ, v: QVec) -> bool:
    stacked = k.hstack(MatQ(k.rows, 1, list(v)))
    return rank(stacked) == rank(k)


def induced_map_on_quotients(f: MatQ, ker_src: MatQ, ker_tgt: MatQ) -> MatQ:
    """Matrix of the map induced by f on quotients by the given subspaces.

    Requires f(span ker_src) <= span ker_tgt; quotient bases are the
    pivot-complement coordinates of each subspace's reduced echelon form.
    """
    if ker_src.rows != f.cols or ker_tgt.rows != f.rows:
        raise DimensionMismatch("kernel matrices do not match f")
    for j in range(ker_src.cols):
        if not in_span(ker_tgt, f.apply(ker_src.col(j))):
            raise SubspaceNotPreserved(
                f"image of subspace generator {j} leaves the target subspace"
            )
    _, free_src, _ = quotient_coords(ker_src)
    _, _, project_tgt = quotient_coords(ker_tgt)
    cols = [project_tgt(f.apply(unit_vec(f.cols, j))) for j in free_src]
    if not cols:
        return MatQ.zeros(ker_tgt.rows - rank(ker_tgt), 0)
    return MatQ.from_cols(cols)


def mat_from_strings(rows) -> MatQ:
    """Build a MatQ from nested lists of "p/q" strings (JSON wire format)."""
    return MatQ.from_rows([[rat(e) for e in row] for row in rows])


def mat_to_strings(m: MatQ) -> list[list[str]]:
    return [[str(e) for e in row] for row in m.to_rows()]
