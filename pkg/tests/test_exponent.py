from fractions import Fraction
from itertools import permutations

import pytest

from diffident.algebra import (
    ad_unit,
    direct_sum,
    full_matrix,
    inner_derivation,
    lie_closure,
    make_algebra,
    matrix_unit_vector,
    trivial_action,
    truncated_grassmann,
    ut,
)
from diffident.exponent import (
    classify_growth,
    exp_differential,
    exp_ordinary,
    is_solvable,
    lemma_bridge_check,
    verify_gk,
)
from diffident.structure import wedderburn_malcev


def _field():
    return make_algebra([[[Fraction(1)]]], unit_vector=[1], label="F")


class TestOrdinaryExponent:
    def test_ut2(self):
        rep = exp_ordinary(ut(2))
        assert rep.value == 2
        assert rep.witness_sequence == (0, 1)

    def test_mat2(self):
        assert exp_ordinary(full_matrix(2)).value == 4

    def test_nilpotent(self):
        z = [[[Fraction(0)]]]
        rep = exp_ordinary(make_algebra(z, label="nil"))
        assert rep.value == 0
        assert rep.witness_sequence == ()

    def test_f_plus_f_stays_at_one(self):
        # zero radical kills every multi-block chain
        assert exp_ordinary(direct_sum(_field(), _field())).value == 1

    def test_ut3(self):
        assert exp_ordinary(ut(3)).value == 3

    def test_pruned_matches_exhaustive(self):
        # exhaustive enumeration over all distinct-block sequences
        for alg in (ut(2), ut(3), direct_sum(ut(2), _field())):
            wd = wedderburn_malcev(alg)
            blocks, j = wd.blocks, wd.radical
            best = 0
            for r in range(1, len(blocks) + 1):
                for seq in permutations(range(len(blocks)), r):
                    prod = blocks[seq[0]]
                    for i in seq[1:]:
                        prod = alg.subspace_product(
                            alg.subspace_product(prod, j), blocks[i]
                        )
                    if not prod.is_zero():
                        best = max(best, sum(blocks[i].dim for i in seq))
            assert exp_ordinary(alg).value == best


class TestDifferentialExponent:
    def test_eps_action(self):
        u2 = ut(2)
        act = lie_closure(u2, [ad_unit(u2, 2, 2, name="eps")])
        assert exp_differential(u2, act).value == 2

    def test_trivial_action_reduces_to_ordinary(self):
        for alg in (ut(2), ut(3), full_matrix(2), truncated_grassmann(2)):
            act = trivial_action(alg)
            assert exp_differential(alg, act).value == exp_ordinary(alg).value

    def test_single_block_with_inner_action(self):
        m2 = full_matrix(2)
        act = lie_closure(m2, [ad_unit(m2, 1, 1)])
        assert exp_differential(m2, act).value == 4

    def test_block_order_permutation_invariance(self):
        # the same semisimple data reached through differently ordered summands
        a, b = ut(2), full_matrix(2)
        for alg in (direct_sum(a, b), direct_sum(b, a)):
            act = trivial_action(alg)
            assert exp_differential(alg, act).value == 4


class TestVerifyGk:
    def test_ut2_variants(self):
        u2 = ut(2)
        eps = ad_unit(u2, 2, 2, name="eps")
        delta = ad_unit(u2, 1, 2, name="delta")
        for gens in ([], [eps], [delta], [eps, delta]):
            assert verify_gk(u2, lie_closure(u2, gens))

    def test_seeded_random_inner_actions(self):
        import random

        ds = direct_sum(ut(2), full_matrix(2))
        for seed in range(3):
            rng = random.Random(seed)
            vec = [Fraction(rng.randint(-2, 2)) for _ in range(ds.dim)]
            act = lie_closure(ds, [inner_derivation(ds, vec)])
            assert verify_gk(ds, act)


class TestBridgeLemma:
    def test_ut2_eps_sequences(self):
        u2 = ut(2)
        act = lie_closure(u2, [ad_unit(u2, 2, 2, name="eps")])
        assert lemma_bridge_check(u2, act, (0, 1)) == (True, True)
        assert lemma_bridge_check(u2, act, (1, 0)) == (False, False)
        assert lemma_bridge_check(u2, act, (0,)) == (True, True)

    def test_rejects_repeated_blocks(self):
        u2 = ut(2)
        act = trivial_action(u2)
        with pytest.raises(ValueError):
            lemma_bridge_check(u2, act, (0, 0))


class TestSolvability:
    def test_metabelian(self):
        u2 = ut(2)
        act = lie_closure(u2, [ad_unit(u2, 2, 2), ad_unit(u2, 1, 2)])
        assert is_solvable(act)

    def test_trivial(self):
        assert is_solvable(trivial_action(ut(2)))

    def test_sl2_image_not_solvable(self):
        m2 = full_matrix(2)
        gens = [
            inner_derivation(m2, matrix_unit_vector(m2, 1, 2)),
            inner_derivation(m2, matrix_unit_vector(m2, 2, 1)),
        ]
        assert not is_solvable(lie_closure(m2, gens))


class TestClassify:
    def test_polynomial_cases(self):
        for alg in (truncated_grassmann(2), truncated_grassmann(3), direct_sum(_field(), _field())):
            rep = classify_growth(alg, trivial_action(alg))
            assert rep.classification == "Polynomial"
            assert rep.exponent.value <= 1

    def test_exponential_cases(self):
        u2 = ut(2)
        eps = ad_unit(u2, 2, 2, name="eps")
        for gens in ([], [eps]):
            rep = classify_growth(u2, lie_closure(u2, gens))
            assert rep.classification == "Exponential"
            assert rep.exponent.value >= 2

    def test_eps_evidence_shape(self):
        u2 = ut(2)
        act = lie_closure(u2, [ad_unit(u2, 2, 2, name="eps")])
        rep = classify_growth(u2, act)
        # ut2-eps is in its own variety: no exclusion certificate against itself
        assert rep.evidence["ut2-eps"]["excluded"] is False
        assert rep.evidence["ut2"]["excluded"] is True

    def test_polynomial_codim_growth_is_subexponential(self):
        # heuristic desk check: codim ratios stay below lambda = 2 for a
        # polynomially bounded fixture
        from diffident.piengine import codim

        g = truncated_grassmann(2)
        act = trivial_action(g)
        vals = [codim(g, act, n) for n in range(1, 6)]
        ratios = [b / a for a, b in zip(vals, vals[1:]) if a]
        assert rep_below(ratios, 2)


def rep_below(ratios, lam):
    return all(r < lam for r in ratios[-2:])
