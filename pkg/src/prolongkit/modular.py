"""Rank and nullspace computations modulo word-sized primes.

The fast path reduces float64 matrices whose entries are exact integers below
2^53.  With primes below 2^23 and panel width 128, every intermediate product
and accumulated dot stays below 2^53, so BLAS matmuls on float64 are exact and
the blocked elimination is a true computation over GF(p).

Used as the probabilistic backend: dimensions computed modulo several
independent random primes are accepted only when all of them agree.
"""

from __future__ import annotations

import random

import numpy as np

PRIME_LO = 1 << 22
PRIME_HI = 1 << 23
_PANEL = 128

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond the word-prime range used here."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for b in _MR_BASES:
        x = pow(b, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_primes(count: int, seed: int, lo: int = PRIME_LO, hi: int = PRIME_HI) -> list[int]:
    """Distinct random primes in [lo, hi), deterministic under seed."""
    rng = random.Random(seed)
    found: list[int] = []
    while len(found) < count:
        c = rng.randrange(lo | 1, hi, 2)
        if c not in found and is_prime(c):
            found.append(c)
    return found


def rank_mod_p_rows(rows: list[dict[int, int]], ncols: int, p: int) -> int:
    """Pure-integer sparse elimination rank over GF(p); independent of the numpy path."""
    pivots: dict[int, dict[int, int]] = {}
    rank = 0
    for row in rows:
        r = {c: v % p for c, v in row.items() if v % p}
        while r:
            lead = min(r)
            prow = pivots.get(lead)
            if prow is None:
                inv = pow(r[lead], -1, p)
                pivots[lead] = {c: v * inv % p for c, v in r.items()}
                rank += 1
                break
            f = r[lead]
            r = {
                c: v
                for c in set(r) | set(prow)
                if (v := (r.get(c, 0) - f * prow.get(c, 0)) % p)
            }
    return rank


def echelon_mod_p(a: np.ndarray, p: int, reduced: bool = True) -> tuple[np.ndarray, list[int]]:
    """In-place blocked row reduction of an integer-valued float64 array mod p.

    Returns the array (echelon, or reduced echelon with unit pivots when
    `reduced`) and the list of pivot columns.
    """
    a = np.remainder(a, p)
    m, n = a.shape
    piv_cols: list[int] = []
    r = 0
    c0 = 0
    while c0 < n and r < m:
        c1 = min(c0 + _PANEL, n)
        panel_pivots: list[int] = []
        r0 = r
        for c in range(c0, c1):
            col = a[r:m, c]
            nz = np.nonzero(col)[0]
            if nz.size == 0:
                continue
            i = r + int(nz[0])
            if i != r:
                a[[r, i]] = a[[i, r]]
            inv = pow(int(a[r, c]), -1, p)
            if r + 1 < m:
                mult = np.remainder(a[r + 1 : m, c] * inv, p)
                a[r + 1 : m, c] = mult
                if c + 1 < c1:
                    block = a[r + 1 : m, c + 1 : c1]
                    block -= np.outer(mult, a[r, c + 1 : c1])
                    np.remainder(block, p, out=block)
            panel_pivots.append(c)
            piv_cols.append(c)
            r += 1
        if panel_pivots and r < m and c1 < n:
            mults = a[r:m][:, panel_pivots]
            if np.any(mults):
                upd = mults @ a[r0:r, c1:n]
                trail = a[r:m, c1:n]
                trail -= np.remainder(upd, p)
                np.remainder(trail, p, out=trail)
        if panel_pivots and r < m:
            a[r:m][:, panel_pivots] = 0.0
        c0 = c1
    if reduced and piv_cols:
        # Normalize pivot rows, then eliminate above pivots from the bottom up.
        for i, c in enumerate(piv_cols):
            inv = pow(int(a[i, c]), -1, p)
            np.remainder(a[i, c:] * inv, p, out=a[i, c:])
        for b1 in range(len(piv_cols), 0, -_PANEL):
            b0 = max(0, b1 - _PANEL)
            if b0 == 0:
                rows_above = 0
            else:
                rows_above = b0
            if rows_above == 0:
                continue
            cols = piv_cols[b0:b1]
            coeff = a[:rows_above][:, cols]
            if np.any(coeff):
                upd = coeff @ a[b0:b1, :]
                sub = a[:rows_above, :]
                sub -= np.remainder(upd, p)
                np.remainder(sub, p, out=sub)
    return a, piv_cols


def rank_mod_p(a: np.ndarray, p: int) -> int:
    _, piv = echelon_mod_p(np.array(a, dtype=np.float64), p, reduced=False)
    return len(piv)


def nullspace_mod_p(a: np.ndarray, p: int) -> np.ndarray:
    """Basis of the right kernel mod p, one row per free column."""
    red, piv_cols = echelon_mod_p(np.array(a, dtype=np.float64), p, reduced=True)
    n = red.shape[1]
    piv_set = set(piv_cols)
    free = [c for c in range(n) if c not in piv_set]
    out = np.zeros((len(free), n))
    for k, f in enumerate(free):
        out[k, f] = 1.0
        for i, c in enumerate(piv_cols):
            v = red[i, f]
            if v:
                out[k, c] = p - v
    return out


def sparse_rows_to_dense_mod_p(rows: list[dict[int, int]], ncols: int, p: int) -> np.ndarray:
    a = np.zeros((len(rows), ncols))
    for i, row in enumerate(rows):
        for c, v in row.items():
            a[i, c] = v % p
    return a
