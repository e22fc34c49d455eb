"""Exact rational and modular linear algebra.

Everything downstream (structure theory, codimension ranks, subspace
lattices) is built on the three primitives here: reduced row echelon form
over the rationals, multi-prime modular rank, and echelonized subspaces.
Vectors are rows; a linear map given by a matrix M acts as v -> v*M, so
composing "apply M1, then M2" is the ordinary product M1*M2.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import AmbientMismatch, DenominatorDivisibleByPrime, PrimeDisagreement

Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class Matrix:
    """Dense row-major matrix of exact rationals."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Sequence[Sequence]):
        self.rows = rows
        self.cols = cols
        self.entries = [[frac(x) for x in row] for row in entries]
        if len(self.entries) != rows or any(len(r) != cols for r in self.entries):
            raise ValueError("entry shape does not match rows x cols")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "Matrix":
        rows = [list(r) for r in rows]
        if not rows:
            return cls(0, 0, [])
        return cls(len(rows), len(rows[0]), rows)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, [[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, [[ZERO] * cols for _ in range(rows)])

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(tuple(r) for r in self.entries)))

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols}, {self.entries!r})"

    def row(self, i: int) -> list:
        return list(self.entries[i])

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def __add__(self, other: "Matrix") -> "Matrix":
        return Matrix(
            self.rows,
            self.cols,
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ],
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        return Matrix(
            self.rows,
            self.cols,
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ],
        )

    def scale(self, c) -> "Matrix":
        c = frac(c)
        return Matrix(self.rows, self.cols, [[c * x for x in row] for row in self.entries])

    def __mul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("inner dimensions differ")
        out = [[ZERO] * other.cols for _ in range(self.rows)]
        for i, row in enumerate(self.entries):
            orow = out[i]
            for k, a in enumerate(row):
                if a:
                    brow = other.entries[k]
                    for j, b in enumerate(brow):
                        if b:
                            orow[j] += a * b
        return Matrix(self.rows, other.cols, out)

    def transpose(self) -> "Matrix":
        return Matrix(
            self.cols,
            self.rows,
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
        )

    def apply(self, v: Sequence) -> list:
        """Row vector times matrix."""
        if len(v) != self.rows:
            raise ValueError("vector length does not match matrix rows")
        out = [ZERO] * self.cols
        for i, a in enumerate(v):
            if a:
                row = self.entries[i]
                for j, b in enumerate(row):
                    if b:
                        out[j] += a * b
        return out


def _echelonize(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """In-place fraction-free reduction to RREF; returns (nonzero rows, pivots).

    Rows are scaled to integers first so the forward sweep postpones all
    divisions; the final pass rescales pivots to 1 and clears above.
    """
    work = []
    for r in rows:
        den = 1
        for x in r:
            if x.denominator != 1:
                den = den * x.denominator // _gcd(den, x.denominator)
        work.append([x.numerator * (den // x.denominator) for x in r])
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    piv_rows: list[list[int]] = []
    for r in work:
        # reduce against accepted pivot rows (cross-multiplication, no division)
        for pr, pc in zip(piv_rows, pivots):
            if r[pc]:
                a, b = pr[pc], r[pc]
                g = _gcd(a, b)
                ra, rb = a // g, b // g
                for j in range(ncols):
                    r[j] = r[j] * ra - pr[j] * rb
        lead = next((j for j, x in enumerate(r) if x), None)
        if lead is None:
            continue
        g = 0
        for x in r:
            g = _gcd(g, x)
        if r[lead] < 0:
            g = -g
        r = [x // g for x in r]
        pos = 0
        while pos < len(pivots) and pivots[pos] < lead:
            pos += 1
        pivots.insert(pos, lead)
        piv_rows.insert(pos, r)
    # back substitution: clear above pivots, normalize pivots to 1
    out = [[Fraction(x) for x in r] for r in piv_rows]
    for i in range(len(out) - 1, -1, -1):
        pc = pivots[i]
        pv = out[i][pc]
        if pv != 1:
            out[i] = [x / pv for x in out[i]]
        for k in range(i):
            f = out[k][pc]
            if f:
                out[k] = [a - f * b for a, b in zip(out[k], out[i])]
    return out, pivots


def _gcd(a: int, b: int) -> int:
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def rref(m: Matrix) -> tuple[Matrix, int, list[int]]:
    """Reduced row-echelon form, rank and pivot columns."""
    reduced, pivots = _echelonize([list(r) for r in m.entries])
    rank = len(reduced)
    rows = reduced + [[ZERO] * m.cols for _ in range(m.rows - rank)]
    return Matrix(m.rows, m.cols, rows), rank, pivots


def left_kernel(m: Matrix) -> "Subspace":
    """Subspace of row vectors v with v*M = 0."""
    n = m.rows
    aug = [list(m.entries[i]) + [ONE if j == i else ZERO for j in range(n)] for i in range(n)]
    reduced, pivots = _echelonize(aug)
    kernel_rows = [r[m.cols :] for r in reduced if all(x == 0 for x in r[: m.cols])]
    # rows reduced to zero in the original columns disappear from _echelonize
    # output only if the whole augmented row vanished, which cannot happen;
    # rows with pivot beyond m.cols are exactly the kernel combinations
    return Subspace.from_vectors(n, kernel_rows)


# ---------------------------------------------------------------------------
# modular rank


def _draw_primes(count: int, seed: int, avoid: set[int]) -> list[int]:
    from sympy import nextprime

    rng = random.Random(seed)
    primes: list[int] = []
    seen = set(avoid)
    while len(primes) < count:
        candidate = nextprime(rng.randrange(2**30, 2**31))
        if candidate in seen:
            continue
        seen.add(candidate)
        primes.append(candidate)
    return primes


def _rank_mod(entries: Sequence[Sequence[Fraction]], p: int) -> int:
    rows = []
    for r in entries:
        row = []
        for x in r:
            if x.denominator % p == 0:
                raise DenominatorDivisibleByPrime(str(p))
            row.append(x.numerator * pow(x.denominator, -1, p) % p)
        rows.append(row)
    ncols = len(rows[0]) if rows else 0
    rank = 0
    pivot_rows: list[tuple[int, list[int]]] = []
    for r in rows:
        for pc, pr in pivot_rows:
            f = r[pc]
            if f:
                for j in range(pc, ncols):
                    r[j] = (r[j] - f * pr[j]) % p
        lead = next((j for j, x in enumerate(r) if x), None)
        if lead is None:
            continue
        inv = pow(r[lead], -1, p)
        r = [x * inv % p for x in r]
        pivot_rows.append((lead, r))
        rank += 1
    return rank


def rank_modular(m: Matrix, prime_count: int = 3, seed: int = 0) -> int:
    """Rank modulo prime_count distinct random 31-bit primes.

    Primes are drawn deterministically from the seed; a prime dividing some
    entry denominator is silently replaced.  All residual ranks must agree,
    otherwise PrimeDisagreement is raised for the caller to escalate.
    """
    if prime_count < 2:
        raise ValueError("prime_count must be at least 2")
    used: set[int] = set()
    ranks = []
    attempt = 0
    while len(ranks) < prime_count:
        (p,) = _draw_primes(1, seed * 1_000_003 + attempt, used)
        attempt += 1
        used.add(p)
        try:
            ranks.append(_rank_mod(m.entries, p))
        except DenominatorDivisibleByPrime:
            continue
    if len(set(ranks)) != 1:
        raise PrimeDisagreement(f"ranks {ranks} disagree")
    return ranks[0]


# ---------------------------------------------------------------------------
# subspaces


class Subspace:
    """Subspace of F^n held as a reduced row-echelon basis (canonical)."""

    __slots__ = ("ambient_dim", "basis", "pivot_columns")

    def __init__(self, ambient_dim: int, basis, pivot_columns):
        self.ambient_dim = ambient_dim
        self.basis = tuple(tuple(v) for v in basis)
        self.pivot_columns = tuple(pivot_columns)

    @classmethod
    def from_vectors(cls, ambient_dim: int, vectors: Iterable[Sequence]) -> "Subspace":
        vecs = [[frac(x) for x in v] for v in vectors]
        for v in vecs:
            if len(v) != ambient_dim:
                raise AmbientMismatch(f"vector length {len(v)} != {ambient_dim}")
        if not vecs:
            return cls(ambient_dim, [], [])
        reduced, pivots = _echelonize(vecs)
        return cls(ambient_dim, reduced, pivots)

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, [], [])

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls.from_vectors(
            ambient_dim,
            [[ONE if j == i else ZERO for j in range(ambient_dim)] for i in range(ambient_dim)],
        )

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of F^{self.ambient_dim})"

    def _check_ambient(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise AmbientMismatch(
                f"ambient {self.ambient_dim} vs {other.ambient_dim}"
            )

    def reduce(self, vec: Sequence) -> list:
        """Residual of vec after reduction against the basis."""
        v = [frac(x) for x in vec]
        if len(v) != self.ambient_dim:
            raise AmbientMismatch(f"vector length {len(v)} != {self.ambient_dim}")
        for row, pc in zip(self.basis, self.pivot_columns):
            f = v[pc]
            if f:
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def member(self, vec: Sequence) -> bool:
        return all(x == 0 for x in self.reduce(vec))

    def contains(self, other: "Subspace") -> bool:
        self._check_ambient(other)
        return all(self.member(v) for v in other.basis)

    def sum(self, other: "Subspace") -> "Subspace":
        self._check_ambient(other)
        return Subspace.from_vectors(self.ambient_dim, list(self.basis) + list(other.basis))

    def intersect(self, other: "Subspace") -> "Subspace":
        """Zassenhaus: echelonize [u|u] and [v|0]; rows with zero left half
        carry the intersection in their right half."""
        self._check_ambient(other)
        n = self.ambient_dim
        block = [list(v) + list(v) for v in self.basis]
        block += [list(v) + [ZERO] * n for v in other.basis]
        if not block:
            return Subspace.zero(n)
        reduced, _ = _echelonize(block)
        inter = [r[n:] for r in reduced if all(x == 0 for x in r[:n])]
        return Subspace.from_vectors(n, inter)

    def image(self, m: Matrix) -> "Subspace":
        """Image of the subspace under v -> v*M."""
        return Subspace.from_vectors(m.cols, [m.apply(v) for v in self.basis])


# ---------------------------------------------------------------------------
# incremental sparse rank / left kernel


class SparseRREF:
    """Incremental row-space basis over sparse rows with hashable column labels.

    Rows are fed one at a time as {column_label: value} dicts.  Maintains the
    rank; optionally tracks the combination of input rows expressing each
    pivot row, so that rows reducing to zero yield left-kernel vectors over
    the input row tags.  With a prime, arithmetic is done modulo it.
    """

    def __init__(self, track_kernel: bool = False, prime: int | None = None):
        self.prime = prime
        self.track_kernel = track_kernel
        self._pivots: dict = {}  # column label -> (row dict, combo dict)
        self.kernel: list[dict] = []
        self.rank = 0

    def _coerce(self, x):
        if self.prime is None:
            return frac(x)
        x = frac(x)
        if x.denominator % self.prime == 0:
            raise DenominatorDivisibleByPrime(str(self.prime))
        return x.numerator * pow(x.denominator, -1, self.prime) % self.prime

    def _inv(self, x):
        if self.prime is None:
            return ONE / x
        return pow(x, -1, self.prime)

    def add_row(self, row: dict, tag=None) -> bool:
        """Insert a row; returns True if it enlarged the span."""
        row = {c: v for c, v in ((c, self._coerce(v)) for c, v in row.items()) if v}
        combo = {tag: self._coerce(1)} if self.track_kernel else None
        p = self.prime
        while row:
            lead = min(row)
            hit = self._pivots.get(lead)
            if hit is None:
                inv = self._inv(row[lead])
                if p is None:
                    row = {c: v * inv for c, v in row.items()}
                    if combo is not None:
                        combo = {t: v * inv for t, v in combo.items()}
                else:
                    row = {c: v * inv % p for c, v in row.items()}
                    if combo is not None:
                        combo = {t: v * inv % p for t, v in combo.items()}
                self._pivots[lead] = (row, combo)
                self.rank += 1
                return True
            prow, pcombo = hit
            f = row[lead]
            if p is None:
                for c, v in prow.items():
                    nv = row.get(c, ZERO) - f * v
                    if nv:
                        row[c] = nv
                    else:
                        row.pop(c, None)
                if combo is not None:
                    for t, v in pcombo.items():
                        nv = combo.get(t, ZERO) - f * v
                        if nv:
                            combo[t] = nv
                        else:
                            combo.pop(t, None)
            else:
                for c, v in prow.items():
                    nv = (row.get(c, 0) - f * v) % p
                    if nv:
                        row[c] = nv
                    else:
                        row.pop(c, None)
                if combo is not None:
                    for t, v in pcombo.items():
                        nv = (combo.get(t, 0) - f * v) % p
                        if nv:
                            combo[t] = nv
                        else:
                            combo.pop(t, None)
        if combo is not None:
            self.kernel.append(combo)
        return False
