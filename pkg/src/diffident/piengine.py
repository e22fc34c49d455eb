"""Multilinear differential-polynomial engine.

Two exponent representations coexist:

* formal words: tuples of closure-basis indices, kept in PBW normal form
  (non-decreasing indices) via the bracket constants.  Used for polynomial
  manipulation, consequence closure and cross-algebra comparison.
* envelope indices: a formal word collapses to a linear combination of
  envelope basis operators; codimension ranks only ever see this form.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product as iproduct
from math import factorial

from .algebra import LieAction, StructureAlgebra
from .errors import (
    AlphabetMismatch,
    DenominatorDivisibleByPrime,
    NotMultilinear,
    SizeCap,
    WordCapExceeded,
)
from .linalg import Matrix, ONE, ZERO, SparseRREF, Subspace, frac, _draw_primes

Word = tuple  # of closure-basis indices

DEFAULT_MAX_ENTRIES = 10**7


# ---------------------------------------------------------------------------
# PBW normal form


def _bracket_coeffs(act: LieAction, a: int, b: int) -> list:
    return act.bracket_constants[a][b]


def pbw_normalize_word(act: LieAction, word: Word) -> dict:
    """Rewrite a word into the span of non-decreasing words."""
    cache = getattr(act, "_pbw_cache", None)
    if cache is None:
        cache = {}
        act._pbw_cache = cache
    if word in cache:
        return cache[word]
    for i in range(len(word) - 1):
        if word[i] > word[i + 1]:
            a, b = word[i], word[i + 1]
            prefix, suffix = word[:i], word[i + 2 :]
            out: dict = {}
            _accumulate(out, pbw_normalize_word(act, prefix + (b, a) + suffix), ONE)
            for k, c in enumerate(_bracket_coeffs(act, a, b)):
                if c:
                    _accumulate(out, pbw_normalize_word(act, prefix + (k,) + suffix), c)
            out = {w: v for w, v in out.items() if v}
            cache[word] = out
            return out
    cache[word] = {word: ONE}
    return cache[word]


def _accumulate(target: dict, source: dict, factor):
    for k, v in source.items():
        nv = target.get(k, ZERO) + factor * v
        if nv:
            target[k] = nv
        else:
            target.pop(k, None)


def word_matrix(act: LieAction, word: Word) -> Matrix:
    m = Matrix.identity(act.algebra.dim)
    for letter in word:
        m = m * act.closure_basis[letter].matrix
    return m


def collapse_word(act: LieAction, word: Word) -> tuple:
    """Coordinates of the word's operator in the envelope basis."""
    cache = getattr(act, "_collapse_cache", None)
    if cache is None:
        cache = {}
        act._collapse_cache = cache
    if word not in cache:
        coords = act.envelope.expand(word_matrix(act, word))
        if coords is None:
            from .errors import InternalVerificationFailed

            raise InternalVerificationFailed("word operator escapes the envelope")
        cache[word] = tuple(coords)
    return cache[word]


def default_word_cap(act: LieAction) -> int:
    """Length at which the envelope closure stabilized, plus one."""
    longest = max((len(w) for w in act.envelope.word_reps), default=0)
    return longest + 1


# ---------------------------------------------------------------------------
# L-polynomials


@dataclass(frozen=True)
class LPolynomial:
    """Multilinear differential polynomial: {(vars, words): coefficient}.

    A term key is a pair of equal-length tuples: the variable visiting order
    (one occurrence of each of 1..n) and the per-position exponent words.
    """

    terms: dict
    degree: int

    @classmethod
    def from_terms(cls, terms: dict) -> "LPolynomial":
        terms = {k: frac(v) for k, v in terms.items() if v}
        degree = 0
        for (vars_, words) in terms:
            degree = len(vars_)
            if len(set(vars_)) != degree or len(words) != degree:
                raise NotMultilinear(f"bad term {(vars_, words)}")
        for (vars_, _w) in terms:
            if len(vars_) != degree:
                raise NotMultilinear("mixed degrees")
        return cls(terms=terms, degree=degree)

    @classmethod
    def variable(cls, i: int, word: Word = ()) -> "LPolynomial":
        return cls(terms={((i,), (tuple(word),)): ONE}, degree=1)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "LPolynomial") -> "LPolynomial":
        out = dict(self.terms)
        _accumulate(out, other.terms, ONE)
        return LPolynomial.from_terms(out)

    def __sub__(self, other: "LPolynomial") -> "LPolynomial":
        out = dict(self.terms)
        _accumulate(out, other.terms, -ONE)
        return LPolynomial.from_terms(out)

    def scale(self, c) -> "LPolynomial":
        c = frac(c)
        return LPolynomial.from_terms({k: c * v for k, v in self.terms.items()})

    def __mul__(self, other: "LPolynomial") -> "LPolynomial":
        out: dict = {}
        for (v1, w1), c1 in self.terms.items():
            for (v2, w2), c2 in other.terms.items():
                if set(v1) & set(v2):
                    raise NotMultilinear("products need disjoint variables")
                key = (v1 + v2, w1 + w2)
                _accumulate(out, {key: c1 * c2}, ONE)
        terms = {k: v for k, v in out.items() if v}
        degree = self.degree + other.degree if terms else 0
        poly = LPolynomial(terms=terms, degree=degree)
        # renumbering is the caller's concern; degree tracked structurally
        return poly

    def relabel(self, mapping: dict) -> "LPolynomial":
        out = {}
        for (vars_, words), c in self.terms.items():
            key = (tuple(mapping[v] for v in vars_), words)
            _accumulate(out, {key: c}, ONE)
        return LPolynomial.from_terms(out)


def commutator_poly(f: LPolynomial, g: LPolynomial) -> LPolynomial:
    return f * g - g * f


def left_normed_commutator(polys: list[LPolynomial]) -> LPolynomial:
    out = polys[0]
    for p in polys[1:]:
        out = commutator_poly(out, p)
    return out


def normalize_poly(act: LieAction, f: LPolynomial) -> LPolynomial:
    """Rewrite every exponent word into PBW normal form."""
    out: dict = {}
    for (vars_, words), c in f.terms.items():
        expansions = [pbw_normalize_word(act, w) for w in words]
        stack = [((), ONE)]
        for exp in expansions:
            stack = [
                (done + (w,), coeff * wc)
                for done, coeff in stack
                for w, wc in exp.items()
            ]
        for done, coeff in stack:
            _accumulate(out, {(vars_, done): c * coeff}, ONE)
    return LPolynomial.from_terms(out)


def derive_polynomial(
    f: LPolynomial, letter: int, act: LieAction, cap: int | None = None
) -> LPolynomial:
    """Leibniz action of a closure-basis derivation on a polynomial."""
    if cap is None:
        cap = default_word_cap(act)
    out: dict = {}
    for (vars_, words), c in f.terms.items():
        for pos in range(len(words)):
            new_word = tuple(words[pos]) + (letter,)
            if len(new_word) > cap:
                raise WordCapExceeded(f"word length {len(new_word)} > cap {cap}")
            new_words = words[:pos] + (new_word,) + words[pos + 1 :]
            _accumulate(out, {(vars_, new_words): c}, ONE)
    return normalize_poly(act, LPolynomial.from_terms(out))


def substitute(
    f: LPolynomial,
    assignment: dict,
    act: LieAction,
    cap: int | None = None,
    renumber: bool = True,
) -> LPolynomial:
    """Endomorphism sending each variable to a product of fresh variables.

    assignment maps every variable of f to a tuple of fresh variable indices;
    the images must be pairwise disjoint.  A decorated occurrence x^w is sent
    to the image monomial acted on by w via iterated Leibniz.
    """
    if cap is None:
        cap = default_word_cap(act)
    images = list(assignment.values())
    seen: set = set()
    for img in images:
        if seen & set(img):
            raise NotMultilinear("assignment images are not disjoint")
        seen.update(img)
    out: dict = {}
    for (vars_, words), c in f.terms.items():
        blocks = []
        for v, w in zip(vars_, words):
            img = assignment[v]
            block = LPolynomial.from_terms(
                {(tuple(img), tuple(() for _ in img)): ONE}
            )
            for letter in w:
                block = derive_polynomial(block, letter, act, cap=cap)
            blocks.append(block)
        term_poly = None
        for b in blocks:
            term_poly = b if term_poly is None else _concat(term_poly, b)
        if term_poly is None:
            continue
        for key, v in term_poly.terms.items():
            _accumulate(out, {key: c * v}, ONE)
    if not renumber:
        return normalize_poly(act, LPolynomial.from_terms(out))
    # renumber variables to 1..n in the order of their indices
    all_vars = sorted(seen)
    mapping = {v: i + 1 for i, v in enumerate(all_vars)}
    renamed: dict = {}
    for (vars_, words), c in out.items():
        _accumulate(renamed, {(tuple(mapping[v] for v in vars_), words): c}, ONE)
    return normalize_poly(act, LPolynomial.from_terms(renamed))


def _concat(f: LPolynomial, g: LPolynomial) -> LPolynomial:
    """Position-wise concatenation without the disjointness renumbering."""
    out: dict = {}
    for (v1, w1), c1 in f.terms.items():
        for (v2, w2), c2 in g.terms.items():
            _accumulate(out, {(v1 + v2, w1 + w2): c1 * c2}, ONE)
    terms = {k: v for k, v in out.items() if v}
    if not terms:
        return LPolynomial(terms={}, degree=0)
    degree = len(next(iter(terms))[0])
    return LPolynomial(terms=terms, degree=degree)


# ---------------------------------------------------------------------------
# monomial bases and evaluation


def monomial_basis(n: int, env_dim: int, max_entries: int = DEFAULT_MAX_ENTRIES):
    """All (vars, envelope-exponent) monomials, lex-ordered; lazily streamed."""
    if n < 1:
        raise SizeCap("degree must be at least 1")
    count = factorial(n) * env_dim**n
    if count > max_entries:
        raise SizeCap(f"{count} monomials exceed the budget {max_entries}")
    for vars_ in permutations(range(1, n + 1)):
        for exps in iproduct(range(env_dim), repeat=n):
            yield vars_, exps


def monomial_count(n: int, env_dim: int) -> int:
    return factorial(n) * env_dim**n


def _applied_table(alg: StructureAlgebra, ops: list[Matrix]):
    """applied[b][u] = e_b acted by ops[u], or None when zero."""
    table = []
    for b in range(alg.dim):
        e = alg.basis_vector(b)
        row = []
        for op in ops:
            vec = op.apply(e)
            row.append(vec if any(vec) else None)
        table.append(row)
    return table


def _eval_row(alg: StructureAlgebra, applied, vars_, exps) -> dict:
    """Sparse evaluation row {(basis tuple, output coord): value}."""
    n = len(vars_)
    row: dict = {}
    assign = [0] * n

    def rec(pos, prod):
        if pos == n:
            key = tuple(assign)
            for k, c in enumerate(prod):
                if c:
                    row[(key, k)] = c
            return
        var = vars_[pos] - 1
        for b in range(alg.dim):
            vec = applied[b][exps[pos]]
            if vec is None:
                continue
            newprod = vec if prod is None else alg.multiply(prod, vec)
            if any(newprod):
                assign[var] = b
                rec(pos + 1, newprod)

    rec(0, None)
    return row


def evaluation_matrix(
    alg: StructureAlgebra,
    act: LieAction,
    n: int,
    max_entries: int = DEFAULT_MAX_ENTRIES,
) -> Matrix:
    """Dense evaluation matrix; rows are monomials, columns (tuple, coord)."""
    e = act.envelope.dim
    rows = monomial_count(n, e)
    cols = alg.dim**n * alg.dim
    if rows * cols > max_entries:
        raise SizeCap(f"{rows}x{cols} dense matrix exceeds the budget")
    applied = _applied_table(alg, act.envelope.op_basis)
    col_index = {}
    for i, tup in enumerate(iproduct(range(alg.dim), repeat=n)):
        for k in range(alg.dim):
            col_index[(tup, k)] = i * alg.dim + k
    out = []
    for vars_, exps in monomial_basis(n, e, max_entries):
        sparse = _eval_row(alg, applied, vars_, exps)
        dense = [ZERO] * cols
        for key, v in sparse.items():
            dense[col_index[key]] = v
        out.append(dense)
    return Matrix(rows, cols, out)


def _stream_rank(
    alg, act, n, prime=None, track_kernel=False, max_entries=DEFAULT_MAX_ENTRIES
):
    e = act.envelope.dim
    applied = _applied_table(alg, act.envelope.op_basis)
    rr = SparseRREF(track_kernel=track_kernel, prime=prime)
    stored = 0
    for idx, (vars_, exps) in enumerate(monomial_basis(n, e, max_entries)):
        row = _eval_row(alg, applied, vars_, exps)
        stored += len(row)
        if stored > max_entries:
            raise SizeCap(f"stored entries exceed the budget {max_entries}")
        rr.add_row(row, tag=idx)
    return rr


def codim(
    alg: StructureAlgebra,
    act: LieAction,
    n: int,
    mode: str = "exact",
    prime_count: int = 3,
    seed: int = 0,
    max_entries: int = DEFAULT_MAX_ENTRIES,
) -> int:
    """n-th differential codimension: rank of the evaluation matrix."""
    if mode == "exact":
        return _stream_rank(alg, act, n, max_entries=max_entries).rank
    if mode != "modular":
        raise ValueError("mode must be 'exact' or 'modular'")
    used: set = set()
    ranks = []
    attempt = 0
    while len(ranks) < prime_count:
        (p,) = _draw_primes(1, seed * 1_000_003 + attempt, used)
        attempt += 1
        used.add(p)
        try:
            ranks.append(_stream_rank(alg, act, n, prime=p, max_entries=max_entries).rank)
        except DenominatorDivisibleByPrime:
            continue
    if len(set(ranks)) != 1:
        # escalate to the exact arbiter
        return _stream_rank(alg, act, n, max_entries=max_entries).rank
    return ranks[0]


@dataclass
class IdentityReport:
    degree: int
    codim: int
    identity_dim: int
    kernel: Subspace
    monomial_basis_order: list


def identity_space(
    alg: StructureAlgebra,
    act: LieAction,
    n: int,
    max_entries: int = DEFAULT_MAX_ENTRIES,
) -> IdentityReport:
    e = act.envelope.dim
    order = list(monomial_basis(n, e, max_entries))
    rr = _stream_rank(alg, act, n, track_kernel=True, max_entries=max_entries)
    total = len(order)
    kernel_vecs = []
    for combo in rr.kernel:
        vec = [ZERO] * total
        for tag, v in combo.items():
            vec[tag] = v
        kernel_vecs.append(vec)
    kernel = Subspace.from_vectors(total, kernel_vecs)
    return IdentityReport(
        degree=n,
        codim=rr.rank,
        identity_dim=kernel.dim,
        kernel=kernel,
        monomial_basis_order=order,
    )


# ---------------------------------------------------------------------------
# identities of explicit polynomials


def evaluate_poly(f: LPolynomial, act: LieAction, assignment: list) -> list:
    """Value of f at a tuple of coordinate vectors (index i for variable i+1)."""
    alg = act.algebra
    out = [ZERO] * alg.dim
    for (vars_, words), c in f.terms.items():
        prod = None
        for v, w in zip(vars_, words):
            vec = word_matrix(act, w).apply(assignment[v - 1])
            prod = vec if prod is None else alg.multiply(prod, vec)
            if not any(prod):
                prod = None
                break
        if prod is not None:
            out = [a + c * b for a, b in zip(out, prod)]
    return out


def is_identity(
    f: LPolynomial, act: LieAction, cap: int | None = None, witness: bool = False
):
    """True iff f vanishes on all basis tuples (sufficient by multilinearity)."""
    if cap is None:
        cap = default_word_cap(act)
    for (_vars, words) in f.terms:
        for w in words:
            if len(w) > cap:
                raise WordCapExceeded(f"word {w} longer than cap {cap}")
    alg = act.algebra
    n = f.degree
    for tup in iproduct(range(alg.dim), repeat=n):
        assignment = [alg.basis_vector(b) for b in tup]
        val = evaluate_poly(f, act, assignment)
        if any(val):
            return (False, tup) if witness else False
    return (True, None) if witness else True


def poly_to_envelope_vector(
    f: LPolynomial, act: LieAction, n: int, max_entries: int = DEFAULT_MAX_ENTRIES
) -> list:
    """Coordinates of f in the envelope-collapsed monomial basis of degree n."""
    e = act.envelope.dim
    index = {
        mono: i for i, mono in enumerate(monomial_basis(n, e, max_entries))
    }
    vec = [ZERO] * len(index)
    for (vars_, words), c in f.terms.items():
        expansions = [collapse_word(act, w) for w in words]
        stack = [((), ONE)]
        for exp in expansions:
            stack = [
                (done + (u,), coeff * wc)
                for done, coeff in stack
                for u, wc in enumerate(exp)
                if wc
            ]
        for done, coeff in stack:
            vec[index[(vars_, done)]] += c * coeff
    return vec


# ---------------------------------------------------------------------------
# consequence closure


def _degree_n_instances(g: LPolynomial, n: int, act: LieAction, cap: int):
    """Degree-n elements u0 * g(m_1..m_k) * u1 over variables 1..n."""
    k = g.degree
    if k > n:
        return
    for extra_left in range(n - k + 1):
        for sizes in _compositions(n - extra_left, k):
            # sizes sum to at most n - extra_left; the remainder multiplies
            # on the right
            for perm in permutations(range(1, n + 1)):
                left = perm[:extra_left]
                pos = extra_left
                images = {}
                for var, size in zip(range(1, k + 1), sizes):
                    images[var] = tuple(perm[pos : pos + size])
                    pos += size
                right = perm[pos:]
                body = substitute(g, images, act, cap=cap, renumber=False)
                if body.is_zero():
                    continue
                poly = body
                if left:
                    lmono = LPolynomial.from_terms(
                        {(tuple(left), tuple(() for _ in left)): ONE}
                    )
                    poly = _concat(lmono, poly)
                if right:
                    rmono = LPolynomial.from_terms(
                        {(tuple(right), tuple(() for _ in right)): ONE}
                    )
                    poly = _concat(poly, rmono)
                yield poly


def _compositions(total: int, parts: int):
    """All tuples of `parts` positive integers summing to at most total."""
    if parts == 0:
        yield ()
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _formal_index(n: int, act: LieAction, cap: int):
    """Canonical order of formal monomials (PBW words up to the cap)."""
    letters = act.closure_dim
    words = _pbw_words(letters, cap)
    index = {}
    for vars_ in permutations(range(1, n + 1)):
        for ws in iproduct(words, repeat=n):
            index[(vars_, ws)] = len(index)
    return index


def _pbw_words(letters: int, cap: int) -> list:
    words = [()]
    frontier = [()]
    for _ in range(cap):
        nxt = []
        for w in frontier:
            start = w[-1] if w else 0
            for letter in range(start, letters):
                nxt.append(w + (letter,))
        words.extend(nxt)
        frontier = nxt
    return words


def _collapsed_terms(f: LPolynomial, act: LieAction) -> dict:
    """Terms of f keyed by (vars, envelope index tuple)."""
    out: dict = {}
    for (vars_, words), c in f.terms.items():
        expansions = [collapse_word(act, w) for w in words]
        stack = [((), c)]
        for exp in expansions:
            stack = [
                (done + (u,), coeff * wc)
                for done, coeff in stack
                for u, wc in enumerate(exp)
                if wc
            ]
        for done, coeff in stack:
            _accumulate(out, {(vars_, done): coeff}, ONE)
    return out


def _collapsed_derive(terms: dict, letter_coords, mult_table) -> dict:
    """Leibniz action of a closure-basis letter on collapsed terms.

    Exponent products happen inside the envelope, so no word cap applies.
    """
    out: dict = {}
    for (vars_, exps), c in terms.items():
        for pos in range(len(exps)):
            u = exps[pos]
            for j, lc in letter_coords:
                for k, mc in enumerate(mult_table[u][j]):
                    if not mc:
                        continue
                    key = (vars_, exps[:pos] + (k,) + exps[pos + 1 :])
                    _accumulate(out, {key: c * lc * mc}, ONE)
    return out


def _collapsed_decorate(terms: dict, var: int, u: int, mult_table) -> dict:
    """Endomorphism x_var -> x_var^u on collapsed terms (u applied first)."""
    out: dict = {}
    for (vars_, exps), c in terms.items():
        pos = vars_.index(var)
        e = exps[pos]
        for k, mc in enumerate(mult_table[u][e]):
            if not mc:
                continue
            key = (vars_, exps[:pos] + (k,) + exps[pos + 1 :])
            _accumulate(out, {key: c * mc}, ONE)
    return out


def consequences_space(
    generators: list[LPolynomial],
    n: int,
    act: LieAction,
    cap: int | None = None,
    max_entries: int = DEFAULT_MAX_ENTRIES,
) -> Subspace:
    """Span in the envelope-collapsed monomial coordinates of P_n^L of all
    degree-n consequences of the generators.

    Instances (substitutions with monomial images plus outer multipliers) are
    built formally, then collapsed; the derivation closure runs on collapsed
    coordinates where the envelope absorbs arbitrarily long words, so the
    result equals the collapse of the uncapped formal consequence space.
    """
    if cap is None:
        cap = default_word_cap(act)
    for g in generators:
        for (_v, words) in g.terms:
            cap = max(cap, max((len(w) for w in words), default=0))
    rr = SparseRREF()
    rows: list[dict] = []

    def push(terms: dict) -> bool:
        if not terms:
            return False
        if rr.add_row(dict(terms)):
            rows.append(terms)
            return True
        return False

    queue: list[dict] = []
    for g in generators:
        for inst in _degree_n_instances(g, n, act, cap):
            terms = _collapsed_terms(inst, act)
            if push(terms):
                queue.append(terms)
    letters = [
        [(j, c) for j, c in enumerate(collapse_word(act, (i,))) if c]
        for i in range(act.closure_dim)
    ]
    table = act.envelope.mult_table
    while queue:
        terms = queue.pop()
        for coords in letters:
            derived = _collapsed_derive(terms, coords, table)
            if push(derived):
                queue.append(derived)
        # substitutions x_j -> x_j^u are endomorphisms too
        for var in range(1, n + 1):
            for u in range(1, act.envelope.dim):
                decorated = _collapsed_decorate(terms, var, u, table)
                if push(decorated):
                    queue.append(decorated)
    total = monomial_count(n, act.envelope.dim)
    index = {mono: i for i, mono in enumerate(monomial_basis(n, act.envelope.dim, max_entries))}
    vecs = []
    for terms in rows:
        vec = [ZERO] * total
        for key, c in terms.items():
            vec[index[key]] = c
        vecs.append(vec)
    return Subspace.from_vectors(total, vecs)


# ---------------------------------------------------------------------------
# cross-algebra containment over formal generator words


def _generator_words(m: int, cap: int) -> list:
    """All words over m generator letters of length at most cap, lex order."""
    words = [()]
    frontier = [()]
    for _ in range(cap):
        nxt = [w + (g,) for w in frontier for g in range(m)]
        words.extend(nxt)
        frontier = nxt
    return sorted(words, key=lambda w: (len(w), w))


def _formal_rows(act: LieAction, n: int, words: list, max_entries: int):
    """Evaluation rows over formal generator-word monomials, canonical order."""
    alg = act.algebra
    mats = {(): Matrix.identity(alg.dim)}
    for w in words:
        if w not in mats:
            mats[w] = mats[w[:-1]] * act.generators[w[-1]].matrix
    applied = []
    for b in range(alg.dim):
        e = alg.basis_vector(b)
        row = []
        for w in words:
            vec = mats[w].apply(e)
            row.append(vec if any(vec) else None)
        applied.append(row)
    rows = []
    count = factorial(n) * len(words) ** n
    if count > max_entries:
        raise SizeCap(f"{count} formal monomials exceed the budget")
    order = []
    for vars_ in permutations(range(1, n + 1)):
        for widx in iproduct(range(len(words)), repeat=n):
            order.append((vars_, tuple(words[i] for i in widx)))
            rows.append(_eval_row(alg, applied, vars_, widx))
    return order, rows


def containment_check(
    act_a: LieAction,
    act_b: LieAction,
    n: int,
    cap: int | None = None,
    max_entries: int = DEFAULT_MAX_ENTRIES,
):
    """Does Id_n(A) lie inside Id_n(B) over the common generator alphabet?

    Returns (contained, certificate); the certificate is an LPolynomial in
    Id_n(A) \\ Id_n(B) witnessing B outside the variety of A.
    """
    if len(act_a.generators) != len(act_b.generators):
        raise AlphabetMismatch(
            f"{len(act_a.generators)} vs {len(act_b.generators)} generators"
        )
    m = len(act_a.generators)
    if cap is None:
        cap = max(default_word_cap(act_a), default_word_cap(act_b))
    words = _generator_words(m, cap)
    order, rows_a = _formal_rows(act_a, n, words, max_entries)
    _, rows_b = _formal_rows(act_b, n, words, max_entries)

    rra = SparseRREF(track_kernel=True)
    for i, row in enumerate(rows_a):
        rra.add_row(row, tag=i)
    for combo in rra.kernel:
        # apply the same combination to the B-side rows
        val: dict = {}
        for tag, c in combo.items():
            _accumulate(val, rows_b[tag], c)
        if val:
            terms = {order[tag]: c for tag, c in combo.items()}
            certificate = LPolynomial.from_terms(terms)
            return False, certificate
    return True, None
