"""Symmetric tensors on Q^n in the homogeneous-polynomial convention.

A degree-d symmetric tensor is identified with a degree-d homogeneous
polynomial; coefficients are indexed by exponent vectors.  Polarized
multilinear values are recovered exactly by dividing by multinomial
coefficients.  Linear systems of such tensors are subspaces of the
coefficient space with a fixed monomial ordering (lexicographic, highest
power of the first variable first).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement, permutations
from math import comb, factorial
from typing import Iterable, Sequence

from .linalg import Mat, Subspace

_ZERO = Fraction(0)


def exponents(n: int, d: int) -> list[tuple[int, ...]]:
    """All exponent vectors of total degree d on n variables, lex descending."""
    out: list[tuple[int, ...]] = []

    def rec(prefix: tuple[int, ...], remaining: int, slots: int) -> None:
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for e in range(remaining, -1, -1):
            rec(prefix + (e,), remaining - e, slots - 1)

    if n == 0:
        return [()] if d == 0 else []
    rec((), d, n)
    return out


def exponent_index(n: int, d: int) -> dict[tuple[int, ...], int]:
    return {e: i for i, e in enumerate(exponents(n, d))}


def coeff_space_dim(n: int, d: int) -> int:
    return comb(n + d - 1, d)


def sym_indices(n: int, d: int) -> list[tuple[int, ...]]:
    """Sorted variable-index tuples of length d (array-coordinate convention)."""
    return list(combinations_with_replacement(range(n), d))


def exps_of_indices(idx: Sequence[int], n: int) -> tuple[int, ...]:
    e = [0] * n
    for i in idx:
        e[i] += 1
    return tuple(e)


def indices_of_exps(e: Sequence[int]) -> tuple[int, ...]:
    out: list[int] = []
    for i, k in enumerate(e):
        out.extend([i] * k)
    return tuple(out)


def multinomial(e: Sequence[int]) -> int:
    """Number of index arrangements of the exponent vector."""
    r = factorial(sum(e))
    for k in e:
        r //= factorial(k)
    return r


class SymTensor:
    """Homogeneous polynomial of fixed degree with exact rational coefficients."""

    __slots__ = ("n", "degree", "coeffs")

    def __init__(self, n: int, degree: int, coeffs: dict[tuple[int, ...], Fraction] | None = None):
        self.n = n
        self.degree = degree
        self.coeffs = {e: Fraction(c) for e, c in (coeffs or {}).items() if c}
        for e in self.coeffs:
            if len(e) != n or sum(e) != degree:
                raise ValueError(f"bad exponent {e} for degree {degree} on {n} variables")

    @classmethod
    def monomial(cls, n: int, e: Sequence[int], coeff=1) -> "SymTensor":
        e = tuple(e)
        return cls(n, sum(e), {e: Fraction(coeff)})

    @classmethod
    def from_coeff_vector(cls, n: int, degree: int, vec: Sequence) -> "SymTensor":
        exps = exponents(n, degree)
        if len(vec) != len(exps):
            raise ValueError("coefficient vector length mismatch")
        return cls(n, degree, {e: Fraction(v) for e, v in zip(exps, vec) if v})

    def coeff_vector(self) -> list[Fraction]:
        return [self.coeffs.get(e, _ZERO) for e in exponents(self.n, self.degree)]

    def is_zero(self) -> bool:
        return not self.coeffs

    def scale(self, c) -> "SymTensor":
        c = Fraction(c)
        return SymTensor(self.n, self.degree, {e: c * v for e, v in self.coeffs.items()})

    def __add__(self, other: "SymTensor") -> "SymTensor":
        if (self.n, self.degree) != (other.n, other.degree):
            raise ValueError("degree or dimension mismatch")
        out = dict(self.coeffs)
        for e, v in other.coeffs.items():
            w = out.get(e, _ZERO) + v
            if w:
                out[e] = w
            else:
                out.pop(e, None)
        return SymTensor(self.n, self.degree, out)

    def __sub__(self, other: "SymTensor") -> "SymTensor":
        return self + other.scale(-1)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SymTensor)
            and (self.n, self.degree) == (other.n, other.degree)
            and self.coeffs == other.coeffs
        )

    def partial(self, i: int) -> "SymTensor":
        if self.degree < 1:
            raise ValueError("cannot differentiate a degree-0 tensor")
        out: dict[tuple[int, ...], Fraction] = {}
        for e, c in self.coeffs.items():
            if e[i]:
                e2 = e[:i] + (e[i] - 1,) + e[i + 1 :]
                out[e2] = out.get(e2, _ZERO) + c * e[i]
        return SymTensor(self.n, self.degree - 1, out)

    def directional(self, v: Sequence) -> "SymTensor":
        acc = SymTensor(self.n, self.degree - 1)
        for i, vi in enumerate(v):
            if vi:
                acc = acc + self.partial(i).scale(vi)
        return acc

    def mul_var(self, i: int) -> "SymTensor":
        out = {}
        for e, c in self.coeffs.items():
            out[e[:i] + (e[i] + 1,) + e[i + 1 :]] = c
        return SymTensor(self.n, self.degree + 1, out)

    def evaluate(self, v: Sequence) -> Fraction:
        if len(v) != self.n:
            raise ValueError("point has wrong dimension")
        vals = [Fraction(x) for x in v]
        acc = _ZERO
        for e, c in self.coeffs.items():
            term = c
            for i, k in enumerate(e):
                for _ in range(k):
                    term *= vals[i]
            acc += term
        return acc

    def polarized(self, idx: Sequence[int]) -> Fraction:
        """Value of the fully symmetric multilinear form on basis vectors."""
        if len(idx) != self.degree:
            raise ValueError("index tuple length must equal the degree")
        e = exps_of_indices(idx, self.n)
        c = self.coeffs.get(e, _ZERO)
        return c / multinomial(e) if c else _ZERO

    def gram_matrix(self) -> Mat:
        """Polarized bilinear form of a quadric as an n-by-n matrix."""
        if self.degree != 2:
            raise ValueError("gram matrix is defined for quadrics only")
        m = Mat.zeros(self.n, self.n)
        for e, c in self.coeffs.items():
            idx = indices_of_exps(e)
            i, j = idx[0], idx[1]
            if i == j:
                m[i, i] = c
            else:
                m[i, j] = c / 2
                m[j, i] = c / 2
        return m

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            mono = "*".join(f"x{i}^{k}" if k > 1 else f"x{i}" for i, k in enumerate(e) if k)
            parts.append(f"{c}*{mono}" if mono else f"{c}")
        return " + ".join(parts)


def symmetrize(n: int, values: dict[tuple[int, ...], Fraction | int]) -> SymTensor:
    """Full permutation sum of an index-addressed d-tensor, as a polynomial.

    The array value at a sorted index tuple t is sum over all d! position
    permutations of the input at the permuted tuple.  No 1/d! normalization:
    symmetrizing an already-symmetric tensor multiplies it by d!.  Consumers
    only use spans, so the constant is immaterial there.
    """
    if not values:
        raise ValueError("empty tensor")
    d = len(next(iter(values)))
    for idx in values:
        if len(idx) != d:
            raise ValueError("mixed index lengths")
    coeffs: dict[tuple[int, ...], Fraction] = {}
    for t in combinations_with_replacement(range(n), d):
        s = _ZERO
        for arr in permutations(t):
            v = values.get(arr)
            if v:
                s += Fraction(v)
        if s:
            e = exps_of_indices(t, n)
            coeffs[e] = s * multinomial(e)
    return SymTensor(n, d, coeffs)


def partial_derivative(c: SymTensor, v: Sequence) -> SymTensor:
    """Directional derivative of the polynomial; degree drops by one."""
    return c.directional(v)


def evaluate(c: SymTensor, v: Sequence) -> Fraction:
    return c.evaluate(v)


def bilinear(c: SymTensor, v: Sequence, w: Sequence) -> Fraction:
    """Polarization B of a quadric, with B(v, v) = c(v)."""
    if c.degree != 2:
        raise ValueError("bilinear form is defined for quadrics only")
    acc = _ZERO
    for e, coeff in c.coeffs.items():
        idx = indices_of_exps(e)
        i, j = idx[0], idx[1]
        if i == j:
            acc += coeff * Fraction(v[i]) * Fraction(w[i])
        else:
            acc += coeff * (Fraction(v[i]) * Fraction(w[j]) + Fraction(v[j]) * Fraction(w[i])) / 2
    return acc


class TensorSystem:
    """Linear system of degree-d symmetric tensors as a coefficient subspace."""

    def __init__(self, n: int, degree: int, subspace: Subspace):
        if subspace.ambient_dim != coeff_space_dim(n, degree):
            raise ValueError("subspace does not live in the right coefficient space")
        self.n = n
        self.degree = degree
        self.subspace = subspace

    @classmethod
    def spanned_by(cls, n: int, degree: int, tensors: Iterable[SymTensor]) -> "TensorSystem":
        vecs = []
        for t in tensors:
            if (t.n, t.degree) != (n, degree):
                raise ValueError("tensor outside the system's space")
            vecs.append(t.coeff_vector())
        return cls(n, degree, Subspace.spanned_by(coeff_space_dim(n, degree), vecs))

    @classmethod
    def zero(cls, n: int, degree: int) -> "TensorSystem":
        return cls(n, degree, Subspace.zero(coeff_space_dim(n, degree)))

    @classmethod
    def full(cls, n: int, degree: int) -> "TensorSystem":
        return cls(n, degree, Subspace.full(coeff_space_dim(n, degree)))

    @property
    def dim(self) -> int:
        return self.subspace.dim

    def basis_tensors(self) -> list[SymTensor]:
        return [SymTensor.from_coeff_vector(self.n, self.degree, row) for row in self.subspace.basis_rows()]

    def contains(self, t: SymTensor) -> bool:
        return self.subspace.contains(t.coeff_vector())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TensorSystem)
            and (self.n, self.degree) == (other.n, other.degree)
            and self.subspace == other.subspace
        )

    def __repr__(self) -> str:
        return f"TensorSystem(n={self.n}, degree={self.degree}, dim={self.dim})"


class QuadricSystem(TensorSystem):
    """Degree-2 tensor system; the central object of the calculus."""

    def __init__(self, n: int, subspace: Subspace):
        super().__init__(n, 2, subspace)

    @classmethod
    def of_quadrics(cls, n: int, quadrics: Iterable[SymTensor]) -> "QuadricSystem":
        ts = TensorSystem.spanned_by(n, 2, quadrics)
        return cls(n, ts.subspace)

    @classmethod
    def zero_system(cls, n: int) -> "QuadricSystem":
        return cls(n, Subspace.zero(coeff_space_dim(n, 2)))

    @classmethod
    def full_system(cls, n: int) -> "QuadricSystem":
        return cls(n, Subspace.full(coeff_space_dim(n, 2)))


def ideal_piece(a: TensorSystem) -> TensorSystem:
    """Degree-(d+1) piece of the ideal generated by the system: span of x_i * q."""
    gens = []
    for q in a.basis_tensors():
        for i in range(a.n):
            gens.append(q.mul_var(i))
    out = TensorSystem.spanned_by(a.n, a.degree + 1, gens)
    return out


class NValuedForm:
    """Symmetric d-form valued in a normal space, one component per direction."""

    def __init__(self, degree: int, n: int, components: Sequence[SymTensor]):
        if not components:
            raise ValueError("need at least one normal component")
        for c in components:
            if (c.n, c.degree) != (n, degree):
                raise ValueError("component with mismatched degree or dimension")
        self.degree = degree
        self.n = n
        self.a = len(components)
        self.components = list(components)

    def __repr__(self) -> str:
        return f"NValuedForm(degree={self.degree}, n={self.n}, a={self.a})"
