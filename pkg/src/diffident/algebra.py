"""Structure-constant algebras, derivations, Lie closures and envelopes.

An algebra is given by an N x N x N table: e_i e_j = sum_k c[i][j][k] e_k.
Derivations are N x N matrices acting on row coordinate vectors from the
right, so "apply d1, then d2" is the matrix product d1*d2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .errors import AmbientMismatch, BadParams, NotADerivation, NotAssociative, NotAUnit
from .linalg import Matrix, ONE, ZERO, Subspace, frac


class StructureAlgebra:
    """Finite-dimensional associative algebra over Q given by structure constants."""

    def __init__(self, constants, unit_vector=None, label: str = "", _skip_checks=False):
        self.dim = len(constants)
        self.constants = [
            [[frac(x) for x in cell] for cell in row] for row in constants
        ]
        for row in self.constants:
            if len(row) != self.dim or any(len(cell) != self.dim for cell in row):
                raise BadParams("structure constants must be N x N x N")
        self.unit_vector = None if unit_vector is None else [frac(x) for x in unit_vector]
        self.label = label
        if not _skip_checks:
            self._check_associative()
            if self.unit_vector is not None:
                self._check_unit()

    # -- products ----------------------------------------------------------

    def basis_product(self, i: int, j: int) -> list:
        return list(self.constants[i][j])

    def multiply(self, u: Sequence, v: Sequence) -> list:
        n = self.dim
        out = [ZERO] * n
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                ab = a * b
                for k, c in enumerate(self.constants[i][j]):
                    if c:
                        out[k] += ab * c
        return out

    def basis_vector(self, i: int) -> list:
        return [ONE if j == i else ZERO for j in range(self.dim)]

    def left_mult_matrix(self, v: Sequence) -> Matrix:
        """Matrix of x -> v*x in the row convention (rows indexed by x-basis)."""
        return Matrix.from_rows(
            [self.multiply(v, self.basis_vector(i)) for i in range(self.dim)]
        )

    def right_mult_matrix(self, v: Sequence) -> Matrix:
        return Matrix.from_rows(
            [self.multiply(self.basis_vector(i), v) for i in range(self.dim)]
        )

    # -- verification ------------------------------------------------------

    def _check_associative(self):
        n = self.dim
        for i in range(n):
            for j in range(n):
                ij = self.constants[i][j]
                for k in range(n):
                    left = self.multiply(ij, self.basis_vector(k))
                    right = self.multiply(self.basis_vector(i), self.constants[j][k])
                    if left != right:
                        raise NotAssociative((i, j, k))

    def _check_unit(self):
        u = self.unit_vector
        for i in range(self.dim):
            e = self.basis_vector(i)
            if self.multiply(u, e) != e or self.multiply(e, u) != e:
                raise NotAUnit(f"fails on basis element {i}")

    # -- misc --------------------------------------------------------------

    def subspace(self, vectors) -> Subspace:
        return Subspace.from_vectors(self.dim, vectors)

    def subspace_product(self, u: Subspace, v: Subspace) -> Subspace:
        """Span of all pairwise products of basis vectors."""
        if u.ambient_dim != self.dim or v.ambient_dim != self.dim:
            raise AmbientMismatch("subspace ambient differs from algebra dimension")
        prods = [self.multiply(a, b) for a in u.basis for b in v.basis]
        return Subspace.from_vectors(self.dim, prods)

    def __repr__(self):
        return f"StructureAlgebra({self.label or 'dim %d' % self.dim})"


@dataclass(frozen=True)
class Derivation:
    """A derivation presented by its coordinate matrix (right action)."""

    matrix: Matrix
    name: str = ""

    def apply(self, v: Sequence) -> list:
        return self.matrix.apply(v)


def make_algebra(constants, unit_vector=None, label: str = "") -> StructureAlgebra:
    return StructureAlgebra(constants, unit_vector=unit_vector, label=label)


def inner_derivation(alg: StructureAlgebra, a: Sequence, name: str = "") -> Derivation:
    """ad_a : x -> xa - ax."""
    a = [frac(x) for x in a]
    rows = []
    for i in range(alg.dim):
        e = alg.basis_vector(i)
        xa = alg.multiply(e, a)
        ax = alg.multiply(a, e)
        rows.append([p - q for p, q in zip(xa, ax)])
    return Derivation(Matrix.from_rows(rows), name=name)


def check_derivation(alg: StructureAlgebra, m: Matrix) -> bool:
    """Leibniz rule on all basis pairs."""
    if m.rows != alg.dim or m.cols != alg.dim:
        raise BadParams("derivation matrix must be N x N")
    for i in range(alg.dim):
        ei = alg.basis_vector(i)
        dei = m.apply(ei)
        for j in range(alg.dim):
            ej = alg.basis_vector(j)
            lhs = m.apply(alg.basis_product(i, j))
            rhs = [
                a + b
                for a, b in zip(alg.multiply(dei, ej), alg.multiply(ei, m.apply(ej)))
            ]
            if lhs != rhs:
                return False
    return True


def _matrix_to_vec(m: Matrix) -> list:
    return [x for row in m.entries for x in row]


def _vec_to_matrix(v: Sequence, n: int) -> Matrix:
    return Matrix(n, n, [list(v[i * n : (i + 1) * n]) for i in range(n)])


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return a * b - b * a


@dataclass
class Envelope:
    """Unital associative algebra generated by the closure matrices.

    op_basis[0] is the identity; word_reps[i] is one word in closure-basis
    indices realizing op_basis[i] as a product (left-to-right application).
    """

    op_basis: list[Matrix]
    mult_table: list[list[list[Fraction]]]
    word_reps: list[tuple[int, ...]]

    @property
    def dim(self) -> int:
        return len(self.op_basis)

    def expand(self, m: Matrix) -> Optional[list]:
        """Coordinates of m in op_basis, or None if outside the span."""
        return _solve_in_span(
            [_matrix_to_vec(b) for b in self.op_basis], _matrix_to_vec(m)
        )


def _lie_closure_matrices(alg_dim: int, generators: list[Matrix]) -> list[Matrix]:
    n2 = alg_dim * alg_dim
    basis_mats: list[Matrix] = []
    span = Subspace.zero(n2)
    queue = list(generators)
    while queue:
        m = queue.pop(0)
        v = _matrix_to_vec(m)
        if span.member(v):
            continue
        span = span.sum(Subspace.from_vectors(n2, [v]))
        basis_mats.append(m)
        for other in list(basis_mats):
            queue.append(commutator(other, m))
    return basis_mats


@dataclass
class LieAction:
    """Derivation generators, their Lie closure, and the acting envelope."""

    algebra: StructureAlgebra
    generators: list[Derivation]
    closure_basis: list[Derivation]
    bracket_constants: list[list[list[Fraction]]]
    envelope: Envelope

    @property
    def closure_dim(self) -> int:
        return len(self.closure_basis)

    def nonunital_ops(self) -> list[Matrix]:
        """Envelope basis elements with a non-empty generating word."""
        return [
            b
            for b, w in zip(self.envelope.op_basis, self.envelope.word_reps)
            if len(w) > 0
        ]


def envelope(alg: StructureAlgebra, closure_matrices: list[Matrix]) -> Envelope:
    """Multiplicative closure of {identity} u closure basis, breadth-first."""
    n = alg.dim
    ident = Matrix.identity(n)
    op_basis = [ident]
    words: list[tuple[int, ...]] = [()]
    span = Subspace.from_vectors(n * n, [_matrix_to_vec(ident)])
    frontier = list(range(len(op_basis)))
    # seed with the closure matrices themselves
    for gi, g in enumerate(closure_matrices):
        v = _matrix_to_vec(g)
        if not span.member(v):
            span = span.sum(Subspace.from_vectors(n * n, [v]))
            op_basis.append(g)
            words.append((gi,))
    changed = True
    while changed:
        changed = False
        for bi in range(len(op_basis)):
            for gi, g in enumerate(closure_matrices):
                prod = op_basis[bi] * g  # apply word, then g
                v = _matrix_to_vec(prod)
                if not span.member(v):
                    span = span.sum(Subspace.from_vectors(n * n, [v]))
                    op_basis.append(prod)
                    words.append(words[bi] + (gi,))
                    changed = True
    env = Envelope(op_basis=op_basis, mult_table=[], word_reps=words)
    table = []
    for a in op_basis:
        row = []
        for b in op_basis:
            coords = env.expand(a * b)
            if coords is None:
                from .errors import InternalVerificationFailed

                raise InternalVerificationFailed("envelope not multiplicatively closed")
            row.append(coords)
        table.append(row)
    env.mult_table = table
    return env


def lie_closure(alg: StructureAlgebra, generators: list[Derivation]) -> LieAction:
    for d in generators:
        if not check_derivation(alg, d.matrix):
            raise NotADerivation()
    closure_mats = _lie_closure_matrices(alg.dim, [d.matrix for d in generators])
    closure = [
        Derivation(m, name=generators[i].name if i < len(generators) else f"d{i}")
        for i, m in enumerate(closure_mats)
    ]
    env = envelope(alg, closure_mats)
    # bracket constants of the closure in its own basis
    n2 = alg.dim * alg.dim
    basis_vecs = [_matrix_to_vec(m) for m in closure_mats]
    brackets = []
    for a in closure_mats:
        row = []
        for b in closure_mats:
            c = commutator(a, b)
            coords = _solve_in_span(basis_vecs, _matrix_to_vec(c))
            if coords is None:
                raise NotADerivation("closure not bracket-closed (internal)")
            row.append(coords)
        brackets.append(row)
    return LieAction(
        algebra=alg,
        generators=generators,
        closure_basis=closure,
        bracket_constants=brackets,
        envelope=env,
    )


def _solve_in_span(basis_vecs: list[list], target: Sequence) -> Optional[list]:
    """Coefficients expressing target in basis_vecs, or None."""
    if not basis_vecs:
        return [] if all(x == 0 for x in target) else None
    from .linalg import _echelonize

    k = len(basis_vecs)
    ncols = len(target)
    aug = [
        list(bv) + [ONE if j == i else ZERO for j in range(k)]
        for i, bv in enumerate(basis_vecs)
    ]
    reduced, pivots = _echelonize(aug)
    v = [frac(x) for x in target]
    combo = [ZERO] * k
    for row, pc in zip(reduced, pivots):
        if pc >= ncols:
            continue
        f = v[pc]
        if f:
            v = [a - f * b for a, b in zip(v, row[:ncols])]
            combo = [a + f * b for a, b in zip(combo, row[ncols:])]
    if any(x != 0 for x in v):
        return None
    return combo


def subspace_under_action(
    s: Subspace, env: Envelope, include_identity: bool = True, word_reps=None
) -> Subspace:
    """Span of b^u for b in s and u over the envelope basis.

    With include_identity False only operators carrying a non-empty word are
    applied (the non-unital variant).
    """
    ambient = env.op_basis[0].rows
    if s.ambient_dim != ambient:
        raise AmbientMismatch("subspace ambient differs from algebra dimension")
    vecs = []
    reps = word_reps if word_reps is not None else env.word_reps
    for op, w in zip(env.op_basis, reps):
        if not include_identity and len(w) == 0:
            continue
        for b in s.basis:
            vecs.append(op.apply(b))
    return Subspace.from_vectors(ambient, vecs)


def adjoin_unit(alg: StructureAlgebra) -> StructureAlgebra:
    """A^+ = A + F*1 with A embedded in the first N coordinates."""
    n = alg.dim
    m = n + 1
    constants = [[[ZERO] * m for _ in range(m)] for _ in range(m)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                constants[i][j][k] = alg.constants[i][j][k]
    for i in range(n):
        constants[i][n][i] = ONE
        constants[n][i][i] = ONE
    constants[n][n][n] = ONE
    unit = [ZERO] * n + [ONE]
    return StructureAlgebra(
        constants, unit_vector=unit, label=f"({alg.label})+" if alg.label else "A+",
        _skip_checks=True,
    )


def trivial_action(alg: StructureAlgebra) -> LieAction:
    return lie_closure(alg, [])


# ---------------------------------------------------------------------------
# built-in algebras


def _ut_basis(n: int):
    return [(i, j) for i in range(n) for j in range(i, n)]


def _matrix_units_algebra(pairs, label):
    dim = len(pairs)
    index = {p: k for k, p in enumerate(pairs)}
    constants = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
    for a, (i, j) in enumerate(pairs):
        for b, (k, l) in enumerate(pairs):
            if j == k and (i, l) in index:
                constants[a][b][index[(i, l)]] = ONE
    size = 1 + max(max(i, j) for i, j in pairs)
    unit = [ZERO] * dim
    for d in range(size):
        if (d, d) in index:
            unit[index[(d, d)]] = ONE
    alg = StructureAlgebra(constants, unit_vector=unit, label=label, _skip_checks=True)
    alg._unit_pairs = index  # basis lookup for named inner derivations
    return alg


def ut(n: int) -> StructureAlgebra:
    if n < 1:
        raise BadParams("ut(n) needs n >= 1")
    return _matrix_units_algebra(_ut_basis(n), f"ut{n}")


def full_matrix(n: int) -> StructureAlgebra:
    if n < 1:
        raise BadParams("full_matrix(n) needs n >= 1")
    pairs = [(i, j) for i in range(n) for j in range(n)]
    return _matrix_units_algebra(pairs, f"mat{n}")


def matrix_unit_vector(alg: StructureAlgebra, i: int, j: int) -> list:
    """Coordinate vector of e_ij in a matrix-unit built-in (1-based indices)."""
    index = getattr(alg, "_unit_pairs", None)
    if index is None or (i - 1, j - 1) not in index:
        raise BadParams(f"no matrix unit e{i}{j} in {alg.label}")
    return alg.basis_vector(index[(i - 1, j - 1)])


def ad_unit(alg: StructureAlgebra, i: int, j: int, name: str = "") -> Derivation:
    return inner_derivation(
        alg, matrix_unit_vector(alg, i, j), name=name or f"ad{i}{j}"
    )


def truncated_grassmann(k: int) -> StructureAlgebra:
    """Unital exterior algebra on k anticommuting square-zero generators."""
    if k < 1:
        raise BadParams("truncated_grassmann(k) needs k >= 1")
    subsets = []
    for size in range(k + 1):
        subsets.extend(combinations(range(k), size))
    index = {s: i for i, s in enumerate(subsets)}
    dim = len(subsets)
    constants = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
    for a, s in enumerate(subsets):
        for b, t in enumerate(subsets):
            if set(s) & set(t):
                continue
            merged = tuple(sorted(s + t))
            # sign of the shuffle putting s followed by t in increasing order
            seq = list(s) + list(t)
            sign = 1
            for x in range(len(seq)):
                for y in range(x + 1, len(seq)):
                    if seq[x] > seq[y]:
                        sign = -sign
            constants[a][b][index[merged]] = Fraction(sign)
    unit = [ONE] + [ZERO] * (dim - 1)
    return StructureAlgebra(
        constants, unit_vector=unit, label=f"grassmann{k}", _skip_checks=True
    )


def direct_sum(a: StructureAlgebra, b: StructureAlgebra, label: str = "") -> StructureAlgebra:
    n, m = a.dim, b.dim
    dim = n + m
    constants = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                constants[i][j][k] = a.constants[i][j][k]
    for i in range(m):
        for j in range(m):
            for k in range(m):
                constants[n + i][n + j][n + k] = b.constants[i][j][k]
    unit = None
    if a.unit_vector is not None and b.unit_vector is not None:
        unit = list(a.unit_vector) + list(b.unit_vector)
    return StructureAlgebra(
        constants,
        unit_vector=unit,
        label=label or f"{a.label}(+){b.label}",
        _skip_checks=True,
    )


def builtin(name: str, params: Sequence = ()) -> StructureAlgebra:
    if name == "ut":
        return ut(int(params[0]))
    if name == "full_matrix":
        return full_matrix(int(params[0]))
    if name == "truncated_grassmann":
        return truncated_grassmann(int(params[0]))
    if name == "direct_sum":
        if len(params) != 2:
            raise BadParams("direct_sum takes two algebras")
        return direct_sum(params[0], params[1])
    raise BadParams(f"unknown builtin {name!r}")
