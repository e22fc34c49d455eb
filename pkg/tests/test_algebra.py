import random
from fractions import Fraction

import pytest

from diffident.algebra import (
    Derivation,
    StructureAlgebra,
    ad_unit,
    adjoin_unit,
    check_derivation,
    direct_sum,
    envelope,
    full_matrix,
    inner_derivation,
    lie_closure,
    matrix_unit_vector,
    subspace_under_action,
    trivial_action,
    truncated_grassmann,
    ut,
)
from diffident.errors import NotADerivation, NotAssociative, NotAUnit
from diffident.linalg import Matrix, Subspace


def test_ut2_products():
    u2 = ut(2)
    e11 = matrix_unit_vector(u2, 1, 1)
    e12 = matrix_unit_vector(u2, 1, 2)
    e22 = matrix_unit_vector(u2, 2, 2)
    assert u2.multiply(e11, e12) == e12
    assert u2.multiply(e12, e11) == [0, 0, 0]
    assert u2.multiply(e12, e22) == e12
    assert u2.unit_vector == [1, 0, 1]


def test_non_associative_rejected():
    bad = [[[Fraction(0), Fraction(0)] for _ in range(2)] for _ in range(2)]
    bad[0][0] = [Fraction(0), Fraction(1)]
    bad[1][1] = [Fraction(1), Fraction(0)]
    with pytest.raises(NotAssociative):
        StructureAlgebra(bad)


def test_bad_unit_rejected():
    with pytest.raises(NotAUnit):
        StructureAlgebra(ut(2).constants, unit_vector=[1, 1, 1])


@pytest.mark.parametrize("n", [2, 3])
def test_inner_derivations_satisfy_leibniz(n):
    alg = ut(n)
    rng = random.Random(n)
    for _ in range(5):
        a = [Fraction(rng.randint(-3, 3)) for _ in range(alg.dim)]
        d = inner_derivation(alg, a)
        assert check_derivation(alg, d.matrix)


def test_identity_map_is_not_a_derivation():
    u2 = ut(2)
    assert not check_derivation(u2, Matrix.identity(3))


def test_lie_closure_rejects_non_derivation():
    with pytest.raises(NotADerivation):
        lie_closure(ut(2), [Derivation(Matrix.identity(3))])


def test_metabelian_closure_of_der_ut2():
    u2 = ut(2)
    eps = ad_unit(u2, 2, 2, name="eps")
    delta = ad_unit(u2, 1, 2, name="delta")
    act = lie_closure(u2, [eps, delta])
    assert act.closure_dim == 2
    # [eps, delta] lies back in the span, so the closure added nothing
    assert act.envelope.dim == 3
    assert act.envelope.word_reps[0] == ()


def test_bracket_constants_match_matrices():
    u2 = ut(2)
    act = lie_closure(u2, [ad_unit(u2, 2, 2), ad_unit(u2, 1, 2)])
    for a in range(2):
        for b in range(2):
            lhs = (
                act.closure_basis[a].matrix * act.closure_basis[b].matrix
                - act.closure_basis[b].matrix * act.closure_basis[a].matrix
            )
            rhs = Matrix.zero(3, 3)
            for k, c in enumerate(act.bracket_constants[a][b]):
                rhs = rhs + act.closure_basis[k].matrix.scale(c)
            assert lhs == rhs


def test_envelope_multiplicatively_closed():
    u2 = ut(2)
    act = lie_closure(u2, [ad_unit(u2, 2, 2)])
    env = act.envelope
    assert env.dim == 2
    for a in env.op_basis:
        for b in env.op_basis:
            assert env.expand(a * b) is not None


def test_word_reps_realize_operators():
    u2 = ut(2)
    act = lie_closure(u2, [ad_unit(u2, 2, 2), ad_unit(u2, 1, 2)])
    for op, word in zip(act.envelope.op_basis, act.envelope.word_reps):
        m = Matrix.identity(3)
        for letter in word:
            m = m * act.closure_basis[letter].matrix
        assert m == op


def test_trivial_action_envelope_is_scalars():
    g = truncated_grassmann(2)
    act = trivial_action(g)
    assert act.closure_dim == 0
    assert act.envelope.dim == 1


def test_subspace_under_action_variants():
    u2 = ut(2)
    act = lie_closure(u2, [ad_unit(u2, 2, 2)])
    span_e11 = Subspace.from_vectors(3, [[1, 0, 0]])
    with_id = subspace_under_action(span_e11, act.envelope, include_identity=True)
    without = subspace_under_action(span_e11, act.envelope, include_identity=False)
    assert with_id.contains(without)
    assert with_id.dim >= span_e11.dim


def test_adjoin_unit():
    u2 = ut(2)
    plus = adjoin_unit(u2)
    assert plus.dim == 4
    assert plus.unit_vector == [0, 0, 0, 1]
    x = [Fraction(1), Fraction(2), Fraction(3), Fraction(0)]
    assert plus.multiply(plus.unit_vector, x) == x
    assert plus.multiply(x, plus.unit_vector) == x


def test_builtin_dimensions():
    assert ut(3).dim == 6
    assert full_matrix(2).dim == 4
    assert truncated_grassmann(2).dim == 4
    assert direct_sum(ut(2), full_matrix(2)).dim == 7


def test_direct_sum_annihilating_summands():
    ds = direct_sum(ut(2), full_matrix(2))
    left = [Fraction(1)] * 3 + [Fraction(0)] * 4
    right = [Fraction(0)] * 3 + [Fraction(1)] * 4
    assert ds.multiply(left, right) == [Fraction(0)] * 7


def test_grassmann_anticommutes():
    g = truncated_grassmann(2)
    e1 = g.basis_vector(1)
    e2 = g.basis_vector(2)
    assert g.multiply(e1, e1) == [Fraction(0)] * 4
    prod = g.multiply(e1, e2)
    flipped = g.multiply(e2, e1)
    assert prod == [-x for x in flipped]
