import itertools
import math

import pytest
from hypothesis import given, strategies as st

from grext.functors import (Ab, AbPow, Const, DirectSum, PassiBar, Tensor, binomial_dimension,
                            cross_effect, dimension, evaluate, hom_passi, hom_reduced_tensor,
                            idempotent, induced, kappa_elementwise, kappa_image_rank, kappa_matrix,
                            merge_matrix, nat_hom_oracle, nat_hom_stable, power_of_ab,
                            symmetric_action)
from grext.linalg import IntMatrix, Lattice
from grext.parser import parse_functor
from grext.words import GrMorphism, bar_coface, fold, permutation

from strategies import morphisms

FAMILY = ["const(2)", "a", "a^2", "a^3", "passi(1)", "passi(2)", "passi(3)", "a+const(1)",
          "a*(a+const(1))", "a^2+passi(2)", "a*passi(2)"]


def surjections(d, t):
    return sum((-1) ** j * math.comb(t, j) * (t - j) ** d for j in range(t + 1))


def cross_effect_rank_from_dims(F, t):
    # inverse binomial transform of k -> dim F(F_k)
    return sum((-1) ** (t - s) * math.comb(t, s) * dimension(F, s) for s in range(t + 1))


class TestEvaluation:
    @pytest.mark.parametrize("text,k,dim", [("const(3)", 2, 3), ("a", 3, 3), ("a^2", 3, 9),
                                            ("passi(2)", 2, 6), ("passi(3)", 1, 3),
                                            ("a*(a+const(1))", 2, 6), ("a^0", 4, 1)])
    def test_dimensions(self, text, k, dim):
        F = parse_functor(text)
        assert dimension(F, k) == dim == evaluate(F, k).dim

    def test_labels(self):
        ev = evaluate(PassiBar(2), 2)
        assert ev.basis == ((1,), (2,), (1, 1), (1, 2), (2, 1), (2, 2))
        assert ev.index((2, 1)) == 4
        assert evaluate(DirectSum(Ab(), Const(1)), 2).basis == ((0, 1), (0, 2), (1, 0))

    def test_degrees(self):
        assert parse_functor("a^2+passi(3)").degree == 3
        assert parse_functor("a*passi(2)").degree == 3
        assert Const(4).degree == 0
        assert power_of_ab(0) == Const(1) and power_of_ab(1) == Ab() and power_of_ab(2) == AbPow(2)

    def test_bad_nodes(self):
        with pytest.raises(ValueError):
            AbPow(0)
        with pytest.raises(ValueError):
            evaluate(Ab(), -1)

    def test_abelianization_matrix(self):
        phi = GrMorphism.from_letters(2, [(1, 2, 1), (-2,)])
        assert induced(Ab(), phi).to_dense() == [[2, 0], [1, -1]]

    def test_passi_on_commutator(self):
        # x1 -> [x1, x2] has image X1 X2 - X2 X1 in the degree-2 Passi functor
        phi = GrMorphism.from_letters(2, [(1, 2, -1, -2)])
        M = induced(PassiBar(2), phi)
        labels = evaluate(PassiBar(2), 2).basis
        col = {labels[i]: c for i, c in M.column(0).items()}
        assert col == {(1, 2): 1, (2, 1): -1}

    @pytest.mark.parametrize("text", FAMILY)
    @given(data=st.data())
    def test_functoriality(self, text, data):
        F = parse_functor(text)
        a, b, c = (data.draw(st.integers(0, 3)) for _ in range(3))
        f = data.draw(morphisms(a, b, 3))
        g = data.draw(morphisms(b, c, 3))
        assert induced(F, g @ f) == induced(F, g) @ induced(F, f)

    @pytest.mark.parametrize("text", FAMILY)
    @pytest.mark.parametrize("k", [0, 1, 2, 3])
    def test_identity(self, text, k):
        F = parse_functor(text)
        assert induced(F, GrMorphism.identity(k)) == IntMatrix.identity(dimension(F, k))


class TestCrossEffects:
    @pytest.mark.parametrize("d", [1, 2, 3, 4])
    @pytest.mark.parametrize("t", [0, 1, 2, 3, 4])
    def test_tensor_power_counts_surjections(self, d, t):
        assert cross_effect(power_of_ab(d), t).rank == surjections(d, t)

    @pytest.mark.parametrize("text", FAMILY)
    @pytest.mark.parametrize("t", [0, 1, 2, 3, 4])
    def test_rank_matches_dimension_transform(self, text, t):
        F = parse_functor(text)
        assert cross_effect(F, t).rank == cross_effect_rank_from_dims(F, t)

    @pytest.mark.parametrize("text", FAMILY)
    def test_vanishing_above_degree(self, text):
        F = parse_functor(text)
        assert cross_effect(F, F.degree + 1).rank == 0
        if F.degree:
            assert cross_effect(F, F.degree).rank > 0

    @pytest.mark.parametrize("text", FAMILY)
    @pytest.mark.parametrize("k", [0, 1, 2, 3, 4])
    def test_binomial_decomposition(self, text, k):
        F = parse_functor(text)
        assert binomial_dimension(F, k) == dimension(F, k)

    @pytest.mark.parametrize("text", ["a^2", "passi(2)", "a*(a+const(1))"])
    @pytest.mark.parametrize("t", [1, 2, 3])
    def test_idempotent_and_splitting(self, text, t):
        F = parse_functor(text)
        e = idempotent(F, t)
        assert e @ e == e
        cr = cross_effect(F, t)
        assert cr.projection @ cr.inclusion == IntMatrix.identity(cr.rank)
        assert cr.inclusion @ cr.projection == e

    @pytest.mark.parametrize("t", [2, 3])
    def test_transpositions_are_involutions(self, t):
        cr = cross_effect(PassiBar(3), t)
        for s in cr.transpositions:
            assert s @ s == IntMatrix.identity(cr.rank)

    @pytest.mark.parametrize("text", FAMILY)
    @pytest.mark.parametrize("d", [0, 1, 2, 3])
    def test_reduced_tensor_hom_is_cross_effect(self, text, d):
        F = parse_functor(text)
        yoneda = hom_reduced_tensor(d, F)
        assert yoneda == Lattice(cross_effect(F, d).inclusion.columns()).basis()


class TestMerges:
    def test_trivial_groups_are_inclusion(self):
        F = AbPow(2)
        M = merge_matrix(F, (1, 1))
        assert M == IntMatrix.identity(4)

    @pytest.mark.parametrize("text", ["a^2", "passi(2)", "a^3"])
    def test_image_in_cross_effect(self, text):
        F = parse_functor(text)
        cr3 = cross_effect(F, 3)
        cr2 = cross_effect(F, 2)
        M = merge_matrix(F, (2, 1)) @ cr2.inclusion
        e = idempotent(F, 3)
        assert e @ M == M
        assert cr3.inclusion @ cr3.projection @ M == M


class TestNaturalTransformations:
    @pytest.mark.parametrize("n,d", [(1, 1), (1, 2), (2, 1), (2, 2), (2, 3), (3, 2), (3, 3)])
    def test_hom_passi_into_tensor_power(self, n, d):
        # the fold x -> x_1...x_{n+1} kills a^d on cross-effects iff d <= n
        assert hom_passi(n, power_of_ab(d)).free_rank == (1 if d <= n else 0)

    @pytest.mark.parametrize("n,target", [(1, "a"), (2, "a^2"), (2, "passi(2)"), (1, "passi(2)"),
                                          (2, "a+a^2")])
    def test_hom_passi_matches_brute_force(self, n, target):
        F = parse_functor(target)
        group, stable = nat_hom_stable(PassiBar(n), F, 3)
        assert stable and hom_passi(n, F) == group

    def test_hom_passi_zero(self):
        assert hom_passi(0, Ab()).is_zero()

    @pytest.mark.parametrize("d", [1, 2, 3])
    def test_endomorphisms_of_tensor_power(self, d):
        # natural endomorphisms of a^d are the group ring of S_d
        assert nat_hom_oracle(power_of_ab(d), power_of_ab(d), d + 1).free_rank == math.factorial(d)

    def test_no_maps_between_degrees(self):
        assert nat_hom_oracle(Ab(), AbPow(2), 3).is_zero()
        assert nat_hom_oracle(AbPow(2), Ab(), 3).is_zero()
        assert nat_hom_oracle(Const(1), Ab(), 3).is_zero()


class TestSymmetricAction:
    @pytest.mark.parametrize("d", [1, 2, 3, 4])
    def test_regular_representation(self, d):
        act = symmetric_action(d)
        assert len(act.labels) == math.factorial(d)
        identity = tuple(range(1, d + 1))
        for perm, M in act.matrices.items():
            trace = sum(M.to_dense()[i][i] for i in range(M.rows))
            assert trace == (math.factorial(d) if perm == identity else 0)
            assert all(len(c) == 1 and list(c.values()) == [1] for c in M.columns())

    def test_labels_are_distinct_letter_words(self):
        act = symmetric_action(3)
        assert sorted(act.labels) == sorted(itertools.permutations((1, 2, 3)))


class TestKappa:
    @pytest.mark.parametrize("d", [1, 2])
    def test_products_span_ideal_power(self, d):
        rep = kappa_image_rank(d, d + 1, d + 2)
        assert rep.extra["spans_ideal_power"] and rep.stable
        assert rep.rank == rep.extra["expected_rank"]

    def test_products_span_on_products_of_groups(self):
        rep = kappa_image_rank(1, 2, 3, n=2, m=1)
        assert rep.extra["spans_ideal_power"] and rep.stable

    @pytest.mark.parametrize("d,n,m", [(1, 1, 1), (2, 1, 2), (1, 2, 1), (3, 1, 1)])
    def test_elementwise_formula(self, d, n, m):
        assert kappa_elementwise(d, d + 1, n, m, samples=20, seed=d) == 20

    @pytest.mark.parametrize("text,d", [("a", 1), ("a^2", 2), ("passi(2)", 2), ("a+a^2", 2),
                                        ("const(2)", 0), ("a^3", 3)])
    def test_vanishes_on_low_degree(self, text, d):
        assert kappa_matrix(parse_functor(text), d, 1).is_zero()

    @pytest.mark.parametrize("text,d", [("a^2", 1), ("a^3", 2), ("passi(2)", 1)])
    def test_nonzero_in_degree_above(self, text, d):
        assert not kappa_matrix(parse_functor(text), d, 1).is_zero()

    def test_cutoff_too_small(self):
        with pytest.raises(ValueError):
            kappa_image_rank(2, 2, 3)


def test_fold_and_coface_relation():
    # fold(2) is the middle coface out of F_1
    assert fold(2) == bar_coface(2, 1)
    assert permutation([2, 1]) @ permutation([2, 1]) == GrMorphism.identity(2)


def test_tensor_of_functors_is_kron():
    phi = GrMorphism.from_letters(2, [(1, 2), (2,)])
    assert induced(Tensor(Ab(), PassiBar(1)), phi) == induced(Ab(), phi).kron(induced(PassiBar(1), phi))
