"""Reduced words in free groups and morphisms of the skeletal category gr.

A letter is a nonzero int: ``i`` stands for the generator x_i and ``-i`` for
its inverse. Words are always kept freely reduced, so equality of words is
plain tuple equality.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence


class RankError(ValueError):
    """Raised when a generator index or a rank does not fit."""


def reduce(letters: Iterable[int], rank: int) -> "Word":
    """Freely reduce a raw sequence of signed generator indices."""
    out: list[int] = []
    for a in letters:
        if a == 0 or abs(a) > rank:
            raise RankError(f"letter {a} out of range for rank {rank}")
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return Word(rank, tuple(out), _checked=True)


@dataclass(frozen=True)
class Word:
    rank: int
    letters: tuple[int, ...] = ()
    _checked: bool = False

    def __post_init__(self):
        if self.rank < 0:
            raise RankError("negative rank")
        if not self._checked:
            w = reduce(self.letters, self.rank)
            if w.letters != tuple(self.letters):
                raise ValueError(f"word {self.letters} is not reduced")
            object.__setattr__(self, "letters", w.letters)
        object.__setattr__(self, "_checked", True)

    # _checked is construction bookkeeping only
    def __eq__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return self.rank == other.rank and self.letters == other.letters

    def __hash__(self):
        return hash((self.rank, self.letters))

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        if self.rank != other.rank:
            raise RankError("rank mismatch in word product")
        return reduce(self.letters + other.letters, self.rank)

    def inverse(self) -> "Word":
        return Word(self.rank, tuple(-a for a in reversed(self.letters)), _checked=True)

    def exponent_sums(self) -> list[int]:
        sums = [0] * self.rank
        for a in self.letters:
            sums[abs(a) - 1] += 1 if a > 0 else -1
        return sums

    @classmethod
    def identity(cls, rank: int) -> "Word":
        return cls(rank, (), _checked=True)

    @classmethod
    def generator(cls, i: int, rank: int) -> "Word":
        return reduce((i,), rank)

    def __str__(self):
        return format_word(self)

    def __repr__(self):
        return f"Word({format_word(self)!r}, rank={self.rank})"


_LETTER = re.compile(r"^x(\d+)(\^(-?\d+))?$")


def parse_word(text: str, rank: int | None = None) -> Word:
    """Parse ``x1*x2^-1*x1``; ``1`` or the empty string is the identity.

    Powers ``x1^3`` are accepted as sugar. With ``rank=None`` the rank is the
    largest generator index that occurs.
    """
    text = text.replace(" ", "")
    letters: list[int] = []
    if text not in ("", "1"):
        for part in text.split("*"):
            m = _LETTER.match(part)
            if not m:
                raise ValueError(f"bad letter {part!r} in word {text!r}")
            i = int(m.group(1))
            e = int(m.group(3)) if m.group(3) is not None else 1
            if i == 0:
                raise ValueError("generators are numbered from 1")
            letters.extend([i if e > 0 else -i] * abs(e))
    if rank is None:
        rank = max((abs(a) for a in letters), default=0)
    return reduce(letters, rank)


def format_word(w: Word) -> str:
    if not w.letters:
        return "1"
    return "*".join(f"x{a}" if a > 0 else f"x{-a}^-1" for a in w.letters)


@dataclass(frozen=True)
class GrMorphism:
    """A homomorphism F_src -> F_dst, given by the images of the generators."""

    src_rank: int
    dst_rank: int
    images: tuple[Word, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if len(self.images) != self.src_rank:
            raise RankError(
                f"{len(self.images)} images given for source rank {self.src_rank}"
            )
        for w in self.images:
            if w.rank != self.dst_rank:
                raise RankError("image word has the wrong rank")

    @classmethod
    def from_letters(cls, dst_rank: int, images: Sequence[Sequence[int]]) -> "GrMorphism":
        return cls(len(images), dst_rank, tuple(reduce(w, dst_rank) for w in images))

    @classmethod
    def identity(cls, rank: int) -> "GrMorphism":
        return cls(rank, rank, tuple(Word.generator(i, rank) for i in range(1, rank + 1)))

    def apply(self, w: Word) -> Word:
        """Image of a word of the source group."""
        if w.rank != self.src_rank:
            raise RankError("word does not live in the source group")
        out: list[int] = []
        for a in w.letters:
            img = self.images[abs(a) - 1]
            out.extend(img.letters if a > 0 else img.inverse().letters)
        return reduce(out, self.dst_rank)

    def __matmul__(self, other: "GrMorphism") -> "GrMorphism":
        return compose(self, other)

    def __str__(self):
        body = ", ".join(f"x{i + 1}->{format_word(w)}" for i, w in enumerate(self.images))
        return f"[{self.src_rank}->{self.dst_rank}: {body}]"


def compose(g: GrMorphism, f: GrMorphism) -> GrMorphism:
    """g o f: first f, then g."""
    if f.dst_rank != g.src_rank:
        raise RankError(f"cannot compose {g} after {f}")
    return GrMorphism(f.src_rank, g.dst_rank, tuple(g.apply(w) for w in f.images))


def bar_coface(n: int, i: int) -> GrMorphism:
    """Coface F_{n-1} -> F_n behind the i-th face of the bar construction.

    i = 0 drops the first generator, i = n drops the last one, and in between
    x_i goes to x_i x_{i+1}.
    """
    if n < 1 or not 0 <= i <= n:
        raise RankError(f"no coface ({n}, {i})")
    images = []
    for j in range(1, n):
        if i == 0:
            images.append((j + 1,))
        elif j < i or i == n:
            images.append((j,))
        elif j == i:
            images.append((j, j + 1))
        else:
            images.append((j + 1,))
    return GrMorphism.from_letters(n, images)


def fold(d: int) -> GrMorphism:
    """x -> x_1 x_2 ... x_d."""
    if d < 1:
        raise RankError("fold needs d >= 1")
    return GrMorphism.from_letters(d, [tuple(range(1, d + 1))])


def codegeneracy(n: int, j: int) -> GrMorphism:
    """F_n -> F_{n-1} killing x_j and renumbering the others."""
    if not 1 <= j <= n:
        raise RankError(f"no generator {j} in rank {n}")
    images = []
    for t in range(1, n + 1):
        if t < j:
            images.append((t,))
        elif t == j:
            images.append(())
        else:
            images.append((t - 1,))
    return GrMorphism.from_letters(n - 1, images)


def kill(n: int, subset: Iterable[int]) -> GrMorphism:
    """Endomorphism of F_n sending the generators in ``subset`` to 1."""
    s = set(subset)
    return GrMorphism.from_letters(n, [() if t in s else (t,) for t in range(1, n + 1)])


def permutation(perm: Sequence[int]) -> GrMorphism:
    """x_i -> x_{perm[i-1]} (perm given 1-based)."""
    n = len(perm)
    if sorted(perm) != list(range(1, n + 1)):
        raise ValueError(f"{perm} is not a permutation")
    return GrMorphism.from_letters(n, [(p,) for p in perm])


def inversion(n: int, i: int = 1) -> GrMorphism:
    return GrMorphism.from_letters(n, [(-t,) if t == i else (t,) for t in range(1, n + 1)])


def transvection(n: int) -> GrMorphism:
    """x_1 -> x_1 x_2, other generators fixed."""
    if n < 2:
        raise RankError("transvection needs rank >= 2")
    return GrMorphism.from_letters(n, [(1, 2)] + [(t,) for t in range(2, n + 1)])


def block_sum(morphisms: Sequence[GrMorphism]) -> GrMorphism:
    """Free product f_1 * ... * f_s acting on consecutive blocks of generators."""
    dst_total = sum(f.dst_rank for f in morphisms)
    images = []
    offset = 0
    for f in morphisms:
        for w in f.images:
            images.append(tuple(a + offset if a > 0 else a - offset for a in w.letters))
        offset += f.dst_rank
    return GrMorphism.from_letters(dst_total, images)


def all_words(rank: int, max_len: int) -> list[Word]:
    """Every reduced word of length <= max_len, shortest first."""
    words = [Word.identity(rank)]
    frontier = [()]
    letters = [a for i in range(1, rank + 1) for a in (i, -i)]
    for _ in range(max_len):
        nxt = []
        for w in frontier:
            for a in letters:
                if w and w[-1] == -a:
                    continue
                nxt.append(w + (a,))
        words.extend(Word(rank, w, _checked=True) for w in nxt)
        frontier = nxt
    return words
