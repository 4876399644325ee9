import pytest
from hypothesis import given, strategies as st

from grext.words import (GrMorphism, RankError, Word, bar_coface, block_sum, codegeneracy, compose,
                         fold, format_word, parse_word, permutation, reduce)

from strategies import morphisms, raw_letters, words


def W(text, rank):
    return parse_word(text, rank)


class TestReduce:
    def test_cancellation(self):
        assert reduce([1, -1], 1).letters == ()

    def test_single_cancellation(self):
        assert reduce([1, 2, -2, 1], 2).letters == (1, 1)

    def test_already_reduced(self):
        assert reduce([1, 2, -1], 2).letters == (1, 2, -1)

    def test_index_out_of_range(self):
        with pytest.raises(RankError):
            reduce([3], 2)
        with pytest.raises(RankError):
            reduce([0], 2)

    def test_unreduced_word_rejected(self):
        with pytest.raises(ValueError):
            Word(1, (1, -1))

    @given(st.integers(1, 3).flatmap(lambda n: st.tuples(st.just(n), raw_letters(n, 12))))
    def test_idempotent_and_shortening(self, data):
        n, letters = data
        w = reduce(letters, n)
        assert reduce(w.letters, n) == w
        assert len(w) <= len(letters)
        assert all(a != -b for a, b in zip(w.letters, w.letters[1:]))


class TestWordSyntax:
    def test_roundtrip(self):
        w = W("x1*x2^-1*x1", 2)
        assert w.letters == (1, -2, 1)
        assert format_word(w) == "x1*x2^-1*x1"
        assert parse_word(format_word(w), 2) == w

    def test_identity_and_powers(self):
        assert parse_word("1", 2).letters == ()
        assert parse_word("x1^3").letters == (1, 1, 1)
        assert parse_word("x2^-2").rank == 2

    @pytest.mark.parametrize("bad", ["y1", "x0", "x1**x2", "x1^a"])
    def test_bad_syntax(self, bad):
        with pytest.raises(ValueError):
            parse_word(bad)

    @given(words())
    def test_format_parse(self, w):
        assert parse_word(format_word(w), w.rank) == w


class TestCompose:
    def test_identity_law(self):
        f = GrMorphism.from_letters(2, [(1, 2, -1), (2,)])
        assert compose(GrMorphism.identity(2), f) == f
        assert compose(f, GrMorphism.identity(2)) == f

    def test_fold_then_identify(self):
        f = GrMorphism.from_letters(2, [(1, 2)])
        g = GrMorphism.from_letters(1, [(1,), (1,)])
        assert compose(g, f).images == (W("x1^2", 1),)

    def test_single_letter_substitution(self):
        f = GrMorphism.from_letters(1, [(1,)])
        g = GrMorphism.from_letters(2, [(1, -2)])
        assert compose(g, f).images == (W("x1*x2^-1", 2),)

    def test_rank_mismatch(self):
        with pytest.raises(RankError):
            compose(GrMorphism.identity(2), GrMorphism.identity(3))

    @given(st.tuples(*(st.integers(0, 3) for _ in range(4))).flatmap(
        lambda r: st.tuples(morphisms(r[0], r[1]), morphisms(r[1], r[2]), morphisms(r[2], r[3]))))
    def test_associative(self, triple):
        f, g, h = triple
        assert compose(h, compose(g, f)) == compose(compose(h, g), f)

    @given(morphisms())
    def test_units(self, f):
        assert compose(GrMorphism.identity(f.dst_rank), f) == f
        assert compose(f, GrMorphism.identity(f.src_rank)) == f

    @given(st.integers(1, 3).flatmap(lambda n: st.tuples(morphisms(n, 2), words(n))))
    def test_apply_is_a_homomorphism(self, data):
        f, w = data
        v = w.inverse()
        assert f.apply(w * v) == f.apply(w) * f.apply(v)


class TestCofaces:
    def test_from_rank_zero(self):
        phi = bar_coface(1, 0)
        assert (phi.src_rank, phi.dst_rank, phi.images) == (0, 1, ())

    def test_multiply_face(self):
        assert bar_coface(2, 1).images == (W("x1*x2", 2),)

    def test_last_face(self):
        assert bar_coface(2, 2).images == (W("x1", 2),)
        assert bar_coface(2, 0).images == (W("x2", 2),)

    def test_out_of_range(self):
        with pytest.raises(RankError):
            bar_coface(2, 3)
        with pytest.raises(RankError):
            bar_coface(0, 0)

    @pytest.mark.parametrize("n", range(1, 5))
    def test_cosimplicial_identities(self, n):
        for j in range(n + 2):
            for i in range(j):
                lhs = compose(bar_coface(n + 1, j), bar_coface(n, i))
                rhs = compose(bar_coface(n + 1, i), bar_coface(n, j - 1))
                assert lhs == rhs, (n, i, j)


class TestFold:
    def test_fold_one_is_identity(self):
        assert fold(1) == GrMorphism.identity(1)

    def test_binary(self):
        assert fold(2).images == (W("x1*x2", 2),)

    def test_fold_two_then_double(self):
        doubled = block_sum([fold(2), fold(2)])
        assert compose(doubled, fold(2)) == fold(4)

    def test_codegeneracy_kills_one_generator(self):
        s = codegeneracy(3, 2)
        assert s.images == (W("x1", 2), W("1", 2), W("x2", 2))
        assert compose(s, bar_coface(3, 3)) != GrMorphism.identity(2)
        assert compose(codegeneracy(3, 3), bar_coface(3, 3)) == GrMorphism.identity(2)

    def test_permutation_validation(self):
        with pytest.raises(ValueError):
            permutation([1, 1])
