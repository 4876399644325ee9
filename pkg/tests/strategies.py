"""Hypothesis strategies for words, morphisms and integer matrices."""

from hypothesis import strategies as st

from grext.linalg import IntMatrix
from grext.words import GrMorphism, reduce


def raw_letters(rank, max_len=8):
    letters = [a for i in range(1, rank + 1) for a in (i, -i)]
    return st.lists(st.sampled_from(letters), max_size=max_len) if rank else st.just([])


@st.composite
def words(draw, rank=None, max_len=8):
    if rank is None:
        rank = draw(st.integers(1, 3))
    return reduce(draw(raw_letters(rank, max_len)), rank)


@st.composite
def morphisms(draw, src=None, dst=None, max_len=4):
    src = draw(st.integers(0, 3)) if src is None else src
    dst = draw(st.integers(0, 3)) if dst is None else dst
    images = [draw(words(dst, max_len)) if dst else reduce((), 0) for _ in range(src)]
    return GrMorphism(src, dst, tuple(images))


@st.composite
def int_matrices(draw, max_rows=5, max_cols=5, bound=6):
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(0, max_cols))
    rows = [[draw(st.integers(-bound, bound)) for _ in range(c)] for _ in range(r)]
    return IntMatrix.from_dense(rows, cols=c)


@st.composite
def unimodular(draw, n, steps=6):
    """Product of random elementary integer operations."""
    M = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps if n > 1 else 0):
        i, j = draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1))
        if i == j:
            M[i] = [-x for x in M[i]]
        else:
            c = draw(st.integers(-3, 3))
            M[i] = [a + c * b for a, b in zip(M[i], M[j])]
    if n == 1 and draw(st.booleans()):
        M[0][0] = -1
    return IntMatrix.from_dense(M, cols=n)
