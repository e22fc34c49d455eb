from fractions import Fraction

import pytest

from diffident.algebra import (
    StructureAlgebra,
    ad_unit,
    direct_sum,
    full_matrix,
    lie_closure,
    truncated_grassmann,
    ut,
)
from diffident.errors import NonSplitCenter

from diffident.structure import (
    center,
    check_block_action,
    quotient_by_ideal,
    radical,
    semisimple_blocks,
    wedderburn_malcev,
)

F0, F1 = Fraction(0), Fraction(1)


def _algebra_with_nilpotent_part():
    """span{a, j}: a^2 = a + j, aj = ja = j, j^2 = 0.

    Modulo the radical span{j} the image of a is idempotent; lifting it back
    must produce e = a - j, which squares to itself on the nose.
    """
    c = [[[F0, F0], [F0, F0]] for _ in range(2)]
    c[0][0] = [F1, F1]  # a*a = a + j
    c[0][1] = [F0, F1]  # a*j = j
    c[1][0] = [F0, F1]  # j*a = j
    return StructureAlgebra(c, label="lift-fixture")


class TestRadical:
    def test_ut2(self):
        j = radical(ut(2))
        assert j.dim == 1
        assert j.member([0, 1, 0])

    def test_semisimple_algebras_have_zero_radical(self):
        assert radical(full_matrix(2)).is_zero()
        assert radical(full_matrix(3)).is_zero()

    def test_grassmann(self):
        assert radical(truncated_grassmann(2)).dim == 3

    def test_radical_is_an_ideal(self):
        alg = ut(3)
        j = radical(alg)
        for v in j.basis:
            for i in range(alg.dim):
                e = alg.basis_vector(i)
                assert j.member(alg.multiply(list(v), e))
                assert j.member(alg.multiply(e, list(v)))


class TestQuotient:
    def test_ut2_mod_radical(self):
        alg = ut(2)
        q = quotient_by_ideal(alg, radical(alg))
        assert q.algebra.dim == 2
        # the quotient of ut2 by its radical is F x F
        for i in range(2):
            e = q.algebra.basis_vector(i)
            assert q.algebra.multiply(e, e) == e


class TestBlocks:
    def test_mat2_is_one_block(self):
        blocks = semisimple_blocks(full_matrix(2))
        assert [b.dim for b in blocks] == [4]

    def test_nonsplit_center_detected(self):
        # F[s]/(s^2 - 2), a field extension: no rational block split exists
        c = [[[F0, F0], [F0, F0]] for _ in range(2)]
        c[0][0] = [F1, F0]
        c[0][1] = [F0, F1]
        c[1][0] = [F0, F1]
        c[1][1] = [Fraction(2), F0]
        ext = StructureAlgebra(c, unit_vector=[1, 0], label="Q(sqrt2)")
        with pytest.raises(NonSplitCenter):
            semisimple_blocks(ext)

    def test_center_of_mat2_is_scalars(self):
        z = center(full_matrix(2))
        assert z.dim == 1


class TestWedderburn:
    def test_idempotent_lifting_fixture(self):
        alg = _algebra_with_nilpotent_part()
        wd = wedderburn_malcev(alg)
        assert wd.radical.dim == 1
        assert [b.dim for b in wd.blocks] == [1]
        # e = a - j is the unique lifted idempotent
        assert wd.blocks[0].member([1, -1])

    @pytest.mark.parametrize(
        "alg,block_dims,rad_dim",
        [
            (ut(2), [1, 1], 1),
            (ut(3), [1, 1, 1], 3),
            (full_matrix(2), [4], 0),
            (truncated_grassmann(2), [1], 3),
            (direct_sum(ut(2), full_matrix(2)), [1, 1, 4], 1),
        ],
    )
    def test_decomposition_shapes(self, alg, block_dims, rad_dim):
        wd = wedderburn_malcev(alg)
        assert sorted(b.dim for b in wd.blocks) == sorted(block_dims)
        assert wd.radical.dim == rad_dim

    def test_sum_is_direct(self):
        for alg in (ut(3), direct_sum(ut(2), full_matrix(2))):
            wd = wedderburn_malcev(alg)
            assert wd.semisimple_part.dim + wd.radical.dim == alg.dim
            assert wd.semisimple_part.intersect(wd.radical).is_zero()

    def test_block_units_are_idempotent(self):
        alg = direct_sum(ut(2), full_matrix(2))
        wd = wedderburn_malcev(alg)
        for u in wd.block_units:
            assert alg.multiply(u, u) == u

    def test_blocks_are_subalgebras(self):
        alg = direct_sum(full_matrix(2), full_matrix(2))
        wd = wedderburn_malcev(alg)
        for b in wd.blocks:
            for v in b.basis:
                for w in b.basis:
                    assert b.member(alg.multiply(list(v), list(w)))


class TestBlockAction:
    def test_ut2_full_action(self):
        u2 = ut(2)
        act = lie_closure(u2, [ad_unit(u2, 2, 2), ad_unit(u2, 1, 2)])
        wd = wedderburn_malcev(u2)
        report = check_block_action(wd, act)
        assert all(entry["in_block_plus_radical"] for entry in report)
        assert all(
            entry["in_radical_when_1dim"] for entry in report if entry["dim"] == 1
        )
