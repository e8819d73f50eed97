"""Exact linear algebra over arbitrary-precision rationals.

Matrices are dense and small at the API surface; the elimination engine
underneath works on sparse integer rows (fraction-free cross-multiplication
with gcd normalization) and only converts back to normalized rationals when a
reduced basis is materialized.  This keeps coefficient growth under control on
the large structured systems produced elsewhere in the package.

Also provides polynomials in one deformation parameter and the flat limit of a
family of column spans, computed by local-ring column reduction.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Scalar = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


class ResourceGuardError(RuntimeError):
    """Raised when an exact elimination would exceed its configured budget."""


class DegenerationError(ValueError):
    """Raised when a one-parameter family violates the flat-limit contract."""


def _content_normalize(row: dict[int, int]) -> dict[int, int]:
    """Divide an integer row by its content and make the leading entry positive."""
    if not row:
        return row
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g not in (0, 1):
        return {c: v // g for c, v in row.items()}
    return row


def _row_combine(row: dict[int, int], prow: dict[int, int], a: int, b: int) -> dict[int, int]:
    """Return a*row - b*prow, dropping zeros."""
    out: dict[int, int] = {}
    for c, v in row.items():
        out[c] = a * v
    for c, v in prow.items():
        w = out.get(c, 0) - b * v
        if w:
            out[c] = w
        else:
            out.pop(c, None)
    return out


class Eliminator:
    """Incremental fraction-free row reduction over the rationals.

    Rows are fed one at a time as sparse {column: integer} dicts.  Pivot rows
    are kept content-normalized.  `back_reduce` finishes the reduction to a
    fully reduced echelon form, after which kernel vectors and normalized
    rational basis rows can be read off.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, dict[int, int]] = {}
        self._reduced = True

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def add_row(self, row: dict[int, int]) -> bool:
        """Reduce a row against the current pivots; returns True if it added rank."""
        row = {c: v for c, v in row.items() if v}
        pivots = self.pivots
        while row:
            lead = min(row)
            prow = pivots.get(lead)
            if prow is None:
                self.pivots[lead] = _content_normalize(row)
                self._reduced = False
                return True
            a, b = prow[lead], row[lead]
            g = gcd(a, b)
            row = _row_combine(row, prow, a // g, b // g)
            if len(row) > 2 and max(map(abs, row.values())).bit_length() > 256:
                row = _content_normalize(row)
        return False

    def add_fraction_row(self, row: Iterable[tuple[int, Fraction]]) -> bool:
        """Clear denominators and feed a rational row."""
        pairs = [(c, v) for c, v in row if v]
        den = 1
        for _, v in pairs:
            den = den * v.denominator // gcd(den, v.denominator)
        return self.add_row({c: int(v * den) for c, v in pairs})

    def back_reduce(self) -> None:
        """Eliminate entries above every pivot (reduced echelon form)."""
        if self._reduced:
            return
        cols = sorted(self.pivots)
        for i, c in enumerate(cols):
            prow = self.pivots[c]
            for c2 in cols[i + 1 :]:
                if c2 not in prow:
                    continue
                qrow = self.pivots[c2]
                a, b = qrow[c2], prow[c2]
                g = gcd(a, b)
                prow = _content_normalize(_row_combine(prow, qrow, a // g, b // g))
            self.pivots[c] = prow
        self._reduced = True

    def rref_fraction_rows(self) -> list[dict[int, Fraction]]:
        """Reduced rows with pivots normalized to 1, ordered by pivot column."""
        self.back_reduce()
        rows = []
        for c in sorted(self.pivots):
            prow = self.pivots[c]
            piv = prow[c]
            rows.append({k: Fraction(v, piv) for k, v in prow.items()})
        return rows

    def kernel_vectors(self) -> list[dict[int, Fraction]]:
        """Basis of the right kernel of the row space, one vector per free column."""
        self.back_reduce()
        pivot_cols = sorted(self.pivots)
        pivot_set = set(pivot_cols)
        out = []
        for f in range(self.ncols):
            if f in pivot_set:
                continue
            vec: dict[int, Fraction] = {f: _ONE}
            for c in pivot_cols:
                prow = self.pivots[c]
                if f in prow:
                    vec[c] = Fraction(-prow[f], prow[c])
            out.append(vec)
        return out

    def residual(self, row: dict[int, int]) -> dict[int, int]:
        """Reduce a row without installing it; nonempty result means independent."""
        row = {c: v for c, v in row.items() if v}
        while row:
            lead = min(row)
            prow = self.pivots.get(lead)
            if prow is None:
                return _content_normalize(row)
            a, b = prow[lead], row[lead]
            g = gcd(a, b)
            row = _row_combine(row, prow, a // g, b // g)
        return row


def fraction_rows_to_int(rows: Iterable[Sequence[Fraction]]) -> list[dict[int, int]]:
    """Clear denominators row by row, returning sparse integer rows."""
    out = []
    for r in rows:
        den = 1
        for v in r:
            if v:
                den = den * v.denominator // gcd(den, v.denominator)
        out.append({c: int(v * den) for c, v in enumerate(r) if v})
    return out


class Mat:
    """Dense row-major matrix of exact rationals."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Sequence[Fraction]):
        if len(entries) != rows * cols:
            raise ValueError("entry count does not match shape")
        self.rows = rows
        self.cols = cols
        self.entries = list(entries)

    @classmethod
    def from_rows(cls, data: Sequence[Sequence]) -> "Mat":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        flat = []
        for r in data:
            if len(r) != cols:
                raise ValueError("ragged rows")
            flat.extend(Fraction(x) for x in r)
        return cls(rows, cols, flat)

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls(n, n, [_ONE if i == j else _ZERO for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Mat":
        return cls(rows, cols, [_ZERO] * (rows * cols))

    def __getitem__(self, rc: tuple[int, int]) -> Fraction:
        r, c = rc
        return self.entries[r * self.cols + c]

    def __setitem__(self, rc: tuple[int, int], v) -> None:
        r, c = rc
        self.entries[r * self.cols + c] = Fraction(v)

    def row(self, r: int) -> list[Fraction]:
        return self.entries[r * self.cols : (r + 1) * self.cols]

    def col(self, c: int) -> list[Fraction]:
        return self.entries[c :: self.cols][: self.rows] if self.cols else []

    def row_lists(self) -> list[list[Fraction]]:
        return [self.row(r) for r in range(self.rows)]

    def transpose(self) -> "Mat":
        return Mat(self.cols, self.rows, [self[r, c] for c in range(self.cols) for r in range(self.rows)])

    def mul(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        out = Mat.zeros(self.rows, other.cols)
        for i in range(self.rows):
            ri = self.row(i)
            for k, a in enumerate(ri):
                if not a:
                    continue
                rk = other.row(k)
                base = i * other.cols
                for j, b in enumerate(rk):
                    if b:
                        out.entries[base + j] += a * b
        return out

    def mul_vec(self, v: Sequence[Fraction]) -> list[Fraction]:
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return [sum((a * b for a, b in zip(self.row(i), v) if a and b), _ZERO) for i in range(self.rows)]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Mat)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __repr__(self) -> str:
        return f"Mat({self.rows}x{self.cols})"


def _rows_to_mat(rows: list[dict[int, Fraction]], ncols: int) -> Mat:
    flat: list[Fraction] = []
    for r in rows:
        dense = [_ZERO] * ncols
        for c, v in r.items():
            dense[c] = v
        flat.extend(dense)
    return Mat(len(rows), ncols, flat)


def rref(m: Mat) -> tuple[Mat, int]:
    """Reduced row-echelon form and rank."""
    elim = Eliminator(m.cols)
    for r in range(m.rows):
        elim.add_fraction_row(((c, v) for c, v in enumerate(m.row(r)) if v))
    rows = elim.rref_fraction_rows()
    return _rows_to_mat(rows, m.cols), len(rows)


def rank(m: Mat) -> int:
    elim = Eliminator(m.cols)
    for r in range(m.rows):
        elim.add_fraction_row(((c, v) for c, v in enumerate(m.row(r)) if v))
    return elim.rank


class Subspace:
    """Linear subspace of Q^n held as a reduced row-echelon basis."""

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, basis: Mat):
        if basis.cols != ambient_dim:
            raise ValueError("basis width differs from ambient dimension")
        self.ambient_dim = ambient_dim
        self.basis = basis

    @classmethod
    def spanned_by(cls, ambient_dim: int, vectors: Iterable[Sequence]) -> "Subspace":
        elim = Eliminator(ambient_dim)
        for v in vectors:
            elim.add_fraction_row(((c, Fraction(x)) for c, x in enumerate(v) if x))
        rows = elim.rref_fraction_rows()
        return cls(ambient_dim, _rows_to_mat(rows, ambient_dim))

    @classmethod
    def from_sparse_rows(cls, ambient_dim: int, rows: Iterable[dict[int, int]]) -> "Subspace":
        elim = Eliminator(ambient_dim)
        for r in rows:
            elim.add_row(dict(r))
        return cls(ambient_dim, _rows_to_mat(elim.rref_fraction_rows(), ambient_dim))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, Mat.zeros(0, ambient_dim))

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, Mat.identity(ambient_dim))

    @property
    def dim(self) -> int:
        return self.basis.rows

    def basis_rows(self) -> list[list[Fraction]]:
        return self.basis.row_lists()

    def contains(self, v: Sequence) -> bool:
        if len(v) != self.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        elim = Eliminator(self.ambient_dim)
        for r in self.basis_rows():
            elim.add_fraction_row(((c, x) for c, x in enumerate(r) if x))
        res = elim.residual(
            fraction_rows_to_int([[Fraction(x) for x in v]])[0]
        )
        return not res

    def is_subspace_of(self, other: "Subspace") -> bool:
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        return all(other.contains(r) for r in self.basis_rows())

    def add(self, other: "Subspace") -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        return Subspace.spanned_by(self.ambient_dim, self.basis_rows() + other.basis_rows())

    def intersect(self, other: "Subspace") -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient_dim)
        # Solve sum a_i u_i = sum b_j w_j; columns of the system are the two bases.
        k1, k2 = self.dim, other.dim
        elim = Eliminator(k1 + k2)
        u = self.basis_rows()
        w = other.basis_rows()
        for c in range(self.ambient_dim):
            row = [(j, u[j][c]) for j in range(k1) if u[j][c]]
            row += [(k1 + j, -w[j][c]) for j in range(k2) if w[j][c]]
            elim.add_fraction_row(row)
        vecs = []
        for kv in elim.kernel_vectors():
            vec = [_ZERO] * self.ambient_dim
            for j in range(k1):
                a = kv.get(j, _ZERO)
                if a:
                    for c, x in enumerate(u[j]):
                        if x:
                            vec[c] += a * x
            vecs.append(vec)
        return Subspace.spanned_by(self.ambient_dim, vecs)

    def quotient_dim(self, sub: "Subspace") -> int:
        """dim(self / sub); sub must be contained in self."""
        if not sub.is_subspace_of(self):
            raise ValueError("quotient by a subspace not contained in the carrier")
        return self.dim - sub.dim

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def kernel(m: Mat) -> Subspace:
    """Right kernel {v : m v = 0} as a subspace of Q^cols."""
    elim = Eliminator(m.cols)
    for r in range(m.rows):
        elim.add_fraction_row(((c, v) for c, v in enumerate(m.row(r)) if v))
    vecs = []
    for kv in elim.kernel_vectors():
        dense = [_ZERO] * m.cols
        for c, v in kv.items():
            dense[c] = v
        vecs.append(dense)
    return Subspace.spanned_by(m.cols, vecs)


class Poly:
    """Polynomial in one deformation parameter, coefficients lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = cs

    @classmethod
    def const(cls, c) -> "Poly":
        return cls([c])

    @classmethod
    def t(cls) -> "Poly":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else -1

    def is_zero(self) -> bool:
        return not self.coeffs

    def constant_term(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else _ZERO

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return Poly([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + other.scale(-1)

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        return Poly([c * x for x in self.coeffs])

    def __mul__(self, other: "Poly") -> "Poly":
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] += a * b
        return Poly(out)

    def __call__(self, t) -> Fraction:
        t = Fraction(t)
        acc = _ZERO
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def shift_down(self) -> "Poly":
        """Exact quotient by the parameter; requires zero constant term."""
        if self.coeffs and self.coeffs[0]:
            raise ValueError("not divisible by the parameter")
        return Poly(self.coeffs[1:])

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        return f"Poly({self.coeffs})"


_FLAT_LIMIT_PROBE = Fraction(97, 89)


def flat_limit(columns: Sequence[Sequence[Poly]], expected_dim: int) -> Subspace:
    """Limit at t=0 of the span of polynomial columns of generically full rank.

    Local-ring column reduction: evaluate at t=0; while the rank drops, replace
    one column of a vanishing combination by its exact quotient by t.
    """
    k = len(columns)
    if k != expected_dim:
        raise DegenerationError("expected_dim must equal the number of columns")
    if k == 0:
        return Subspace.zero(0)
    ambient = len(columns[0])
    cols = [list(col) for col in columns]
    probe = Mat.from_rows([[col[r](_FLAT_LIMIT_PROBE) for col in cols] for r in range(ambient)])
    if rank(probe) != k:
        raise DegenerationError("columns are dependent at generic parameter values")
    max_deg = max((p.degree for col in cols for p in col), default=0)
    guard = k * (max_deg + 1) + 8
    for _ in range(guard):
        m0 = Mat.from_rows([[col[r].constant_term() for col in cols] for r in range(ambient)])
        ker = kernel(m0)
        if ker.dim == 0:
            return Subspace.spanned_by(ambient, [[col[r].constant_term() for r in range(ambient)] for col in cols])
        kv = ker.basis_rows()[0]
        combo = [Poly() for _ in range(ambient)]
        for j, a in enumerate(kv):
            if a:
                for r in range(ambient):
                    combo[r] = combo[r] + cols[j][r].scale(a)
        target = max(j for j, a in enumerate(kv) if a)
        cols[target] = [p.shift_down() for p in combo]
    raise DegenerationError("column reduction did not terminate; family is not flat-polynomial")
