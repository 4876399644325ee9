"""Small hand-checkable values, one per documented operation."""

import pytest

from grext.ext import bar_cochain_complex, ext, ext_passi, graded_hochschild, passi_resolution, rational_ext
from grext.functors import Ab, AbPow, Const, PassiBar, cross_effect, hom_passi, kappa_image_rank, nat_hom_oracle
from grext.linalg import FinAbGroup
from grext.magnus import TruncGroupRing, ball_presentation_rank, graded_rank, graded_tor_check, mul, ring_element
from grext.words import GrMorphism, Word, compose, fold, parse_word


def W(text, rank):
    return parse_word(text, rank)


class TestWords:
    def test_composition_substitutes(self):
        f = GrMorphism(1, 2, (W("x1*x2", 2),))
        g = GrMorphism(2, 1, (W("x1", 1), W("x1", 1)))
        assert compose(g, f).images == (W("x1^2", 1),)

    def test_fold_then_double_is_longer_fold(self):
        double = GrMorphism.from_letters(4, [(1, 2), (3, 4)])
        assert compose(double, fold(2)) == fold(4)


class TestRing:
    def test_group_element_minus_one(self):
        ring = TruncGroupRing((1,), 2)
        x = Word.generator(1, 1)
        assert ring_element([(1, (x,)), (-1, (Word.identity(1),))], ring) == ring.X(1, 1)

    def test_product_of_augmentation_elements(self):
        ring = TruncGroupRing((2,), 2)
        one = ring.one()
        a = ring.group_element((W("x1", 2),)) - one
        b = ring.group_element((W("x2", 2),)) - one
        expected = ring.from_vector({ring.index[((1, 2),)]: 1})
        assert mul(a, b) == expected

    def test_truncation_and_distributivity(self):
        ring1 = TruncGroupRing((1,), 1)
        assert (ring1.X(1, 1) * ring1.X(1, 1)).coeffs == {}
        ring = TruncGroupRing((2,), 2)
        got = ring.X(1, 1) * (ring.X(1, 2) - ring.X(1, 1))
        assert got.coeffs == {((1, 2),): 1, ((1, 1),): -1}
        assert ring.X(1, 1) * ring.one() == ring.X(1, 1)

    def test_graded_ranks(self):
        assert graded_rank(TruncGroupRing((2,), 3), 3) == 8
        assert graded_rank(TruncGroupRing((1, 1), 2), 2) == 3
        assert graded_rank(TruncGroupRing((3, 2), 2), 0) == 1

    @pytest.mark.parametrize("factors,N,L,rank", [((1,), 2, 4, 3), ((2,), 1, 3, 3), ((1, 1), 2, 4, 6)])
    def test_ball_presentation(self, factors, N, L, rank):
        assert ball_presentation_rank(factors, N, L).rank == rank

    def test_graded_tor(self):
        rep = graded_tor_check(1, 1, 2)
        assert rep.kernel_rank == 0 and rep.cokernel.is_zero()
        assert graded_tor_check(2, 0, 1).kernel_rank == 0
        rep = graded_tor_check(2, 2, 4)
        assert rep.kernel_rank == 0 and rep.image_rank == 16


class TestFunctors:
    def test_cross_effect_ranks(self):
        assert cross_effect(Ab(), 2).rank == 0
        assert cross_effect(AbPow(2), 2).rank == 2
        assert cross_effect(PassiBar(3), 3).rank == 6

    def test_kappa_rank(self):
        rep = kappa_image_rank(1, 3, 2)
        assert rep.rank == rep.extra["expected_rank"] == 2
        assert kappa_image_rank(0, 2, 1).extra["spans_ideal_power"]

    def test_hom_passi(self):
        assert hom_passi(1, Ab()) == FinAbGroup(1)
        assert hom_passi(2, Ab()) == FinAbGroup(1)
        assert hom_passi(1, AbPow(2)) == FinAbGroup(0)

    def test_brute_force_naturality(self):
        assert nat_hom_oracle(Ab(), Ab(), 3) == FinAbGroup(1)
        assert nat_hom_oracle(AbPow(2), AbPow(2), 3).free_rank == 2
        assert nat_hom_oracle(Const(1), Ab(), 2).is_zero()


class TestExt:
    def test_bar_dimensions(self):
        assert bar_cochain_complex(1, Ab(), 2, "unnormalized").dims == [1, 2, 3, 4]
        assert bar_cochain_complex(2, AbPow(2), 0, "unnormalized").dims[0] == 4
        assert bar_cochain_complex(1, AbPow(2), 2, "normalized").dims == [1, 2, 0, 0]

    def test_ext_examples(self):
        assert ext(Ab(), Ab(), 2).groups == [FinAbGroup(1), FinAbGroup(0), FinAbGroup(0)]
        T = ext(Ab(), AbPow(2), 2).groups
        assert T[1].free_rank >= 1 and not T[1].torsion and T[2].is_zero()
        T = ext(AbPow(2), AbPow(2), 1).groups
        assert T[1].is_zero() and T[0] == nat_hom_oracle(AbPow(2), AbPow(2), 3)

    def test_passi_examples(self):
        res = passi_resolution(1, 2)
        assert [t.factors for t in res.terms[1]] == [2] and res.maps[1][0].groups == (2,)
        T = ext_passi(1, AbPow(2), 2).groups
        assert not T[1].is_zero() and T[2].is_zero()
        T = ext_passi(2, AbPow(2), 1).groups
        assert T[0] == hom_passi(2, AbPow(2)) and T[1].is_zero()
        assert ext_passi(1, Ab(), 1).groups == ext(Ab(), Ab(), 1).groups == [FinAbGroup(1), FinAbGroup(0)]
        assert ext_passi(2, Ab(), 0).groups[0] == hom_passi(2, Ab())

    def test_graded_hochschild_examples(self):
        assert [h.free_rank for h in graded_hochschild(1, 1, 2).homology[:2]] == [1, 0]
        assert graded_hochschild(2, 2, 2).homology[0].is_zero()
        R = graded_hochschild(2, 1, 3)
        assert R.homology[0] == FinAbGroup(8) and R.ok

    def test_rational_examples(self):
        b = rational_ext(Ab(), AbPow(2), 2)
        assert b[1] >= 1 and b[2] == 0
        assert rational_ext(Ab(), Ab(), 1) == [1, 0]
        assert rational_ext(AbPow(2), AbPow(2), 0) == [ext(AbPow(2), AbPow(2), 0).groups[0].free_rank]
