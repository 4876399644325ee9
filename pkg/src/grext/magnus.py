"""Truncated tensor algebras, the Magnus expansion, and truncated group rings
Z[G]/I^{N+1} for G a finite direct product of free groups.

For a free group F_n the Magnus map x_i -> 1 + X_i identifies Z[F_n]/I^{N+1}
with the tensor algebra on X_1..X_n cut off above degree N, the powers of the
augmentation ideal becoming the degree filtration. For products the ring is
the tensor product of the factor rings. ``ball_presentation_rank`` builds the
same quotient directly from group elements and is used as an independent
check of this model.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .linalg import FinAbGroup, IntMatrix, Lattice, ResourceLimitError, snf
from .words import Word, all_words, reduce

Monomial = tuple[int, ...]


def monomials(alphabet: int, degree: int) -> list[Monomial]:
    return list(itertools.product(range(1, alphabet + 1), repeat=degree))


def format_monomial(m: Monomial) -> str:
    return ".".join(f"X{i}" for i in m) if m else "1"


def parse_monomial(text: str) -> Monomial:
    text = text.strip()
    if text in ("", "1"):
        return ()
    out = []
    for part in text.split("."):
        if not part.startswith("X") or not part[1:].isdigit() or int(part[1:]) < 1:
            raise ValueError(f"bad monomial letter {part!r}")
        out.append(int(part[1:]))
    return tuple(out)


@dataclass(frozen=True)
class TruncTensor:
    """Element of the free associative ring on X_1..X_n modulo degree > N."""

    alphabet: int
    cutoff: int
    coeffs: dict = field(default_factory=dict, hash=False, compare=True)

    def __post_init__(self):
        clean = {}
        for m, c in self.coeffs.items():
            m = tuple(m)
            if c and len(m) <= self.cutoff:
                if any(not 1 <= i <= self.alphabet for i in m):
                    raise ValueError(f"monomial {m} outside alphabet {self.alphabet}")
                clean[m] = c
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def one(cls, alphabet: int, cutoff: int) -> "TruncTensor":
        return cls(alphabet, cutoff, {(): 1})

    @classmethod
    def X(cls, i: int, alphabet: int, cutoff: int) -> "TruncTensor":
        return cls(alphabet, cutoff, {(i,): 1})

    def _check(self, other: "TruncTensor"):
        if (self.alphabet, self.cutoff) != (other.alphabet, other.cutoff):
            raise ValueError("tensors live in different truncated algebras")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, 0) + c
        return TruncTensor(self.alphabet, self.cutoff, out)

    def __neg__(self):
        return TruncTensor(self.alphabet, self.cutoff, {m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return TruncTensor(self.alphabet, self.cutoff, {m: c * other for m, c in self.coeffs.items()})
        self._check(other)
        N = self.cutoff
        out: dict = {}
        for m1, c1 in self.coeffs.items():
            room = N - len(m1)
            for m2, c2 in other.coeffs.items():
                if len(m2) <= room:
                    m = m1 + m2
                    out[m] = out.get(m, 0) + c1 * c2
        return TruncTensor(self.alphabet, N, out)

    __rmul__ = __mul__

    def constant(self) -> int:
        return self.coeffs.get((), 0)

    def min_degree(self) -> int | None:
        return min((len(m) for m in self.coeffs), default=None)

    def homogeneous(self, degree: int) -> "TruncTensor":
        return TruncTensor(self.alphabet, self.cutoff,
                           {m: c for m, c in self.coeffs.items() if len(m) == degree})

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for m in sorted(self.coeffs, key=lambda m: (len(m), m)):
            c = self.coeffs[m]
            mono = format_monomial(m)
            if mono == "1":
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")


def magnus_expand(w: Word, cutoff: int) -> TruncTensor:
    """Image of w under x_i -> 1 + X_i, x_i^-1 -> 1 - X_i + X_i^2 - ..."""
    if cutoff < 0:
        raise ValueError("cutoff must be >= 0")
    n = w.rank
    result = TruncTensor.one(n, cutoff)
    for a in w.letters:
        i = abs(a)
        if a > 0:
            factor = TruncTensor(n, cutoff, {(): 1, (i,): 1})
        else:
            factor = TruncTensor(n, cutoff, {(i,) * k: (-1) ** k for k in range(cutoff + 1)})
        result = result * factor
    return result


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TruncGroupRing:
    """Z[F_{n_1} x ... x F_{n_s}] / I^{N+1} in the Magnus model.

    Basis elements are s-tuples of monomials, one per factor, of total degree
    at most N; the image of I^r is spanned by the tuples of degree >= r.
    """

    factors: tuple[int, ...]
    cutoff: int

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if self.cutoff < 0 or any(n < 0 for n in self.factors):
            raise ValueError("bad truncated group ring")

    @cached_property
    def basis(self) -> list[tuple[Monomial, ...]]:
        out = []
        for total in range(self.cutoff + 1):
            out.extend(self._degree_part(total))
        return out

    def _degree_part(self, total: int) -> list[tuple[Monomial, ...]]:
        out = []
        s = len(self.factors)
        for split in _compositions(total, s):
            pieces = [monomials(n, d) for n, d in zip(self.factors, split)]
            out.extend(itertools.product(*pieces))
        return out

    @cached_property
    def index(self) -> dict:
        return {b: i for i, b in enumerate(self.basis)}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def degree_indices(self, lo: int, hi: int | None = None) -> list[int]:
        hi = self.cutoff if hi is None else hi
        return [i for i, b in enumerate(self.basis) if lo <= sum(map(len, b)) <= hi]

    def one(self) -> "RingElement":
        return RingElement(self, {tuple(() for _ in self.factors): 1})

    def X(self, factor: int, i: int) -> "RingElement":
        """Generator X_i of the given factor (both 1-based)."""
        key = tuple((i,) if t == factor - 1 else () for t in range(len(self.factors)))
        return RingElement(self, {key: 1})

    def group_element(self, words: Sequence[Word]) -> "RingElement":
        if len(words) != len(self.factors):
            raise ValueError(f"{len(words)} words for {len(self.factors)} factors")
        coeffs = {tuple(() for _ in self.factors): 1}
        for t, (w, n) in enumerate(zip(words, self.factors)):
            if w.rank != n:
                raise ValueError(f"word of rank {w.rank} in factor of rank {n}")
            mu = magnus_expand(w, self.cutoff)
            new = {}
            for key, c in coeffs.items():
                deg = sum(map(len, key))
                for m, d in mu.coeffs.items():
                    if deg + len(m) <= self.cutoff:
                        k2 = key[:t] + (m,) + key[t + 1:]
                        new[k2] = new.get(k2, 0) + c * d
            coeffs = new
        return RingElement(self, coeffs)

    def from_vector(self, vec: dict[int, int]) -> "RingElement":
        return RingElement(self, {self.basis[i]: c for i, c in vec.items()})


@dataclass(frozen=True)
class RingElement:
    parent: TruncGroupRing
    coeffs: dict = field(default_factory=dict, hash=False)

    def __post_init__(self):
        N = self.parent.cutoff
        object.__setattr__(self, "coeffs", {
            k: c for k, c in self.coeffs.items() if c and sum(map(len, k)) <= N
        })

    def _check(self, other):
        if self.parent != other.parent:
            raise ValueError("elements of different rings")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return RingElement(self.parent, out)

    def __neg__(self):
        return RingElement(self.parent, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return RingElement(self.parent, {k: c * other for k, c in self.coeffs.items()})
        self._check(other)
        N = self.parent.cutoff
        out: dict = {}
        for k1, c1 in self.coeffs.items():
            room = N - sum(map(len, k1))
            for k2, c2 in other.coeffs.items():
                if sum(map(len, k2)) <= room:
                    k = tuple(a + b for a, b in zip(k1, k2))
                    out[k] = out.get(k, 0) + c1 * c2
        return RingElement(self.parent, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.parent == other.parent and self.coeffs == other.coeffs

    __hash__ = None

    def augmentation(self) -> int:
        return self.coeffs.get(tuple(() for _ in self.parent.factors), 0)

    def min_degree(self) -> int | None:
        return min((sum(map(len, k)) for k in self.coeffs), default=None)

    def vector(self) -> dict[int, int]:
        idx = self.parent.index
        return {idx[k]: c for k, c in self.coeffs.items()}

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs, key=lambda k: (sum(map(len, k)), k)):
            mono = " (x) ".join(format_monomial(m) for m in k)
            parts.append(f"{self.coeffs[k]}*[{mono}]")
        return " + ".join(parts)


def ring_element(combination: Iterable[tuple[int, Sequence[Word]]], ring: TruncGroupRing) -> RingElement:
    """Image of sum c_g [g] for group elements g given as tuples of words."""
    total = RingElement(ring, {})
    for c, words in combination:
        total = total + ring.group_element(words) * c
    return total


def mul(a: RingElement, b: RingElement) -> RingElement:
    return a * b


def graded_rank(ring: TruncGroupRing, r: int) -> int:
    """Rank of the degree-r piece I^r/I^{r+1} in the model."""
    if r > ring.cutoff or r < 0:
        raise ValueError(f"degree {r} beyond cutoff {ring.cutoff}")
    return sum(1 for b in ring.basis if sum(map(len, b)) == r)


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# Independent oracle: Z[G]/I^{N+1} presented on a ball of group elements


@dataclass
class RankReport:
    query: str
    params: dict
    rank: int
    torsion: list[int]
    stable: bool
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"query": self.query, "params": self.params, "rank": self.rank,
               "torsion": self.torsion, "stable": self.stable}
        out.update(self.extra)
        return out


def product_ball(factors: Sequence[int], radius: int) -> list[tuple[Word, ...]]:
    """Elements of F_{n_1} x ... x F_{n_s} of word length <= radius."""
    per_factor = [all_words(n, radius) for n in factors]
    out = []

    def rec(t, budget, acc):
        if t == len(factors):
            out.append(tuple(acc))
            return
        for w in per_factor[t]:
            if len(w) <= budget:
                rec(t + 1, budget - len(w), acc + [w])

    rec(0, radius, [])
    return out


def _ball_quotient(factors: Sequence[int], N: int, L: int, max_size: int) -> FinAbGroup:
    ball = product_ball(factors, L)
    if len(ball) > max_size:
        raise ResourceLimitError(f"ball of radius {L} has {len(ball)} elements")
    index = {g: i for i, g in enumerate(ball)}
    gens = [(t, a) for t, n in enumerate(factors) for i in range(1, n + 1) for a in (i, -i)]
    relations = set()
    for g in ball:
        for seq in itertools.product(gens, repeat=N + 1):
            row: dict[int, int] = {}
            ok = True
            for size in range(N + 2):
                sign = (-1) ** (N + 1 - size)
                for S in itertools.combinations(range(N + 1), size):
                    h = list(g)
                    for s in S:
                        t, i = seq[s]
                        h[t] = reduce(h[t].letters + (i,), factors[t])
                    j = index.get(tuple(h))
                    if j is None:
                        ok = False
                        break
                    row[j] = row.get(j, 0) + sign
                if not ok:
                    break
            if ok:
                row = {j: c for j, c in row.items() if c}
                if row:
                    relations.add(tuple(sorted(row.items())))
    R = IntMatrix(len(relations), len(ball), {n: dict(r) for n, r in enumerate(sorted(relations))})
    factors_ = snf(R)
    return FinAbGroup.from_factors(len(ball) - len(factors_), factors_)


def ball_presentation_rank(factors: Sequence[int], N: int, L: int,
                           max_size: int = 20000) -> RankReport:
    """Rank of Z[G]/I^{N+1} computed from the group elements of length <= L.

    Relations are left translates g (y_1 - 1)...(y_{N+1} - 1), the y_i
    running over generators and their inverses, whose expansion stays inside
    the ball. With positive generators only, elements on the boundary sphere
    of a free factor of rank >= 2 are left almost unconstrained. The answer
    is also computed at radius L - 1; ``stable`` says whether the two agree.
    """
    if L < N + 1:
        raise ValueError("ball radius must be at least N + 1")
    here = _ball_quotient(factors, N, L, max_size)
    before = _ball_quotient(factors, N, L - 1, max_size) if L - 1 >= N + 1 else None
    return RankReport(
        query="ball_presentation_rank",
        params={"factors": list(factors), "cutoff": N, "ball": L},
        rank=here.free_rank,
        torsion=list(here.torsion),
        stable=before is not None and before == here,
        extra={"rank_previous_radius": None if before is None else before.free_rank},
    )


def model_rank(factors: Sequence[int], N: int) -> int:
    """Rank of Z[G]/I^{N+1} predicted by the product formula."""
    ring = TruncGroupRing(tuple(factors), N)
    return sum(graded_rank(ring, r) for r in range(N + 1))


# ---------------------------------------------------------------------------
# Graded check of the homology of I^r over a free group


@dataclass
class TorReport:
    params: dict
    kernel_rank: int
    image_rank: int
    cokernel: FinAbGroup
    image_is_degree_part: bool

    def to_json(self) -> dict:
        return {"query": "graded_tor_check", "params": self.params,
                "rank": self.cokernel.free_rank, "torsion": list(self.cokernel.torsion),
                "stable": True, "kernel_rank": self.kernel_rank,
                "image_rank": self.image_rank,
                "image_is_degree_part": self.image_is_degree_part}


def graded_tor_check(n: int, r: int, w: int) -> TorReport:
    """Weight-w part of (T^{>=r})^n -> T^{>=r}, (a_i) -> sum X_i a_i.

    Over a free group this is the associated graded of the complex computing
    H_*(G; I^r); the kernel is H_1 and the image is the weight-w part of
    I.I^r = I^{r+1}.
    """
    if w < 0 or n < 1:
        raise ValueError("need n >= 1 and w >= 0")
    src_w = w - 1
    src = [] if src_w < r else monomials(n, src_w)
    tgt = [] if w < r else monomials(n, w)
    tidx = {m: i for i, m in enumerate(tgt)}
    columns = []
    for i in range(1, n + 1):
        for m in src:
            columns.append({tidx[(i,) + m]: 1})
    M = IntMatrix.from_columns(len(tgt), columns)
    factors = snf(M)
    rk = len(factors)
    image = Lattice(columns)
    expected = Lattice({tidx[m]: 1} for m in tgt) if w >= r + 1 else Lattice()
    same = image.basis() == expected.basis()
    return TorReport(
        params={"n": n, "r": r, "w": w},
        kernel_rank=M.cols - rk,
        image_rank=rk,
        cokernel=FinAbGroup.from_factors(M.rows - rk, factors),
        image_is_degree_part=same,
    )
