"""Polynomial functors on gr given as expression trees.

Every node evaluates on F_k to a free abelian group with a combinatorial
basis, and a morphism of gr induces an integer matrix in those bases:

=============  ==========================================  ===================
node           basis labels at rank k                      degree
=============  ==========================================  ===================
Const(m)       0 .. m-1                                    0
Ab             1 .. k                                      1
AbPow(d)       d-tuples over 1 .. k (lexicographic)        d
PassiBar(d)    monomials of length 1 .. d (by length)      d
Tensor(F, G)   pairs (a, b), F major                       deg F + deg G
DirectSum      (0, a) then (1, b)                          max
=============  ==========================================  ===================

PassiBar(d) is G -> I(G)/I^{d+1}(G) in the Magnus model: a monomial
X_{i_1}...X_{i_r} stands for (x_{i_1} - 1)...(x_{i_r} - 1).
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from functools import lru_cache

from .linalg import FinAbGroup, IntMatrix, Lattice, block_diag, kernel_basis, rank
from .magnus import RankReport, TruncGroupRing, TruncTensor, magnus_expand, product_ball
from .words import (GrMorphism, bar_coface, codegeneracy, fold, inversion, kill, permutation,
                    transvection)


class FunctorExpr:
    """Base class of functor syntax trees (all nodes are frozen dataclasses)."""

    @property
    def degree(self) -> int:
        raise NotImplementedError

    def __add__(self, other: "FunctorExpr") -> "FunctorExpr":
        return DirectSum(self, other)

    def __mul__(self, other: "FunctorExpr") -> "FunctorExpr":
        return Tensor(self, other)


@dataclass(frozen=True)
class Const(FunctorExpr):
    m: int

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("constant functor needs m >= 0")

    @property
    def degree(self) -> int:
        return 0

    def __str__(self):
        return f"const({self.m})"


@dataclass(frozen=True)
class Ab(FunctorExpr):
    @property
    def degree(self) -> int:
        return 1

    def __str__(self):
        return "a"


@dataclass(frozen=True)
class AbPow(FunctorExpr):
    d: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("tensor power needs d >= 1")

    @property
    def degree(self) -> int:
        return self.d

    def __str__(self):
        return f"a^{self.d}"


@dataclass(frozen=True)
class PassiBar(FunctorExpr):
    d: int

    def __post_init__(self):
        if self.d < 0:
            raise ValueError("Passi functor needs d >= 0")

    @property
    def degree(self) -> int:
        return self.d

    def __str__(self):
        return f"passi({self.d})"


@dataclass(frozen=True)
class Tensor(FunctorExpr):
    left: FunctorExpr
    right: FunctorExpr

    @property
    def degree(self) -> int:
        return self.left.degree + self.right.degree

    def __str__(self):
        # parenthesize whenever the parser would regroup or merge powers of a
        left = str(self.left)
        if isinstance(self.left, DirectSum) or (
                isinstance(self.left, Tensor) and isinstance(self.right, (Ab, AbPow))):
            left = f"({left})"
        right = str(self.right)
        if isinstance(self.right, (DirectSum, Tensor)):
            right = f"({right})"
        return f"{left}*{right}"


@dataclass(frozen=True)
class DirectSum(FunctorExpr):
    left: FunctorExpr
    right: FunctorExpr

    @property
    def degree(self) -> int:
        return max(self.left.degree, self.right.degree)

    def __str__(self):
        right = f"({self.right})" if isinstance(self.right, DirectSum) else str(self.right)
        return f"{self.left}+{right}"


def power_of_ab(d: int) -> FunctorExpr:
    """a^{(x)d} with the conventions of the parser (d = 0 gives Z)."""
    if d == 0:
        return Const(1)
    return Ab() if d == 1 else AbPow(d)


# ---------------------------------------------------------------------------
# Evaluation


@dataclass(frozen=True)
class EvaluatedFunctor:
    expr: FunctorExpr
    rank: int
    basis: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)

    def index(self, label) -> int:
        return _label_index(self.expr, self.rank)[label]


def _passi_monomials(k: int, d: int) -> list[tuple[int, ...]]:
    out = []
    for r in range(1, d + 1):
        out.extend(itertools.product(range(1, k + 1), repeat=r))
    return out


@lru_cache(maxsize=4096)
def _labels(expr: FunctorExpr, k: int) -> tuple:
    if isinstance(expr, Const):
        return tuple(range(expr.m))
    if isinstance(expr, Ab):
        return tuple(range(1, k + 1))
    if isinstance(expr, AbPow):
        return tuple(itertools.product(range(1, k + 1), repeat=expr.d))
    if isinstance(expr, PassiBar):
        return tuple(_passi_monomials(k, expr.d))
    if isinstance(expr, Tensor):
        return tuple(itertools.product(_labels(expr.left, k), _labels(expr.right, k)))
    if isinstance(expr, DirectSum):
        return tuple([(0, a) for a in _labels(expr.left, k)] + [(1, b) for b in _labels(expr.right, k)])
    raise TypeError(f"unknown functor node {expr!r}")


@lru_cache(maxsize=4096)
def _label_index(expr: FunctorExpr, k: int) -> dict:
    return {b: i for i, b in enumerate(_labels(expr, k))}


def dimension(expr: FunctorExpr, k: int) -> int:
    if isinstance(expr, Const):
        return expr.m
    if isinstance(expr, Ab):
        return k
    if isinstance(expr, AbPow):
        return k ** expr.d
    if isinstance(expr, PassiBar):
        return sum(k ** r for r in range(1, expr.d + 1))
    if isinstance(expr, Tensor):
        return dimension(expr.left, k) * dimension(expr.right, k)
    if isinstance(expr, DirectSum):
        return dimension(expr.left, k) + dimension(expr.right, k)
    raise TypeError(f"unknown functor node {expr!r}")


def evaluate(expr: FunctorExpr, k: int) -> EvaluatedFunctor:
    if k < 0:
        raise ValueError("rank must be >= 0")
    return EvaluatedFunctor(expr, k, _labels(expr, k))


@lru_cache(maxsize=16384)
def induced(expr: FunctorExpr, phi: GrMorphism) -> IntMatrix:
    """Matrix of F(phi): F(F_src) -> F(F_dst) in the label bases."""
    if isinstance(expr, Const):
        return IntMatrix.identity(expr.m)
    if isinstance(expr, Ab):
        return _abelianized(phi)
    if isinstance(expr, AbPow):
        A = _abelianized(phi)
        out = A
        for _ in range(expr.d - 1):
            out = out.kron(A)
        return out
    if isinstance(expr, PassiBar):
        return _passi_induced(expr.d, phi)
    if isinstance(expr, Tensor):
        return induced(expr.left, phi).kron(induced(expr.right, phi))
    if isinstance(expr, DirectSum):
        return block_diag([induced(expr.left, phi), induced(expr.right, phi)])
    raise TypeError(f"unknown functor node {expr!r}")


def _abelianized(phi: GrMorphism) -> IntMatrix:
    cols = [{i: c for i, c in enumerate(w.exponent_sums()) if c} for w in phi.images]
    return IntMatrix.from_columns(phi.dst_rank, cols)


def _passi_induced(d: int, phi: GrMorphism) -> IntMatrix:
    k = phi.dst_rank
    series = [magnus_expand(w, d) - TruncTensor.one(k, d) for w in phi.images]
    index = _label_index(PassiBar(d), k)
    memo: dict[tuple, TruncTensor] = {(): TruncTensor.one(k, d)}

    def image(mono):
        got = memo.get(mono)
        if got is None:
            got = image(mono[:-1]) * series[mono[-1] - 1]
            memo[mono] = got
        return got

    cols = []
    for mono in _labels(PassiBar(d), phi.src_rank):
        cols.append({index[m]: c for m, c in image(mono).coeffs.items()})
    return IntMatrix.from_columns(len(index), cols)


# ---------------------------------------------------------------------------
# Cross-effects


@dataclass(frozen=True)
class CrossEffectModule:
    """cr_t(F)(Z, ..., Z) as a direct summand of F(F_t).

    ``inclusion`` has the canonical (Hermite-reduced) basis of the summand as
    columns; ``projection`` is the left inverse that factors through the
    cross-effect idempotent. ``transpositions[s]`` is the action of the swap
    of x_{s+1} and x_{s+2}.
    """

    functor: FunctorExpr
    t: int
    inclusion: IntMatrix
    projection: IntMatrix
    transpositions: tuple

    @property
    def rank(self) -> int:
        return self.inclusion.cols

    def restrict(self, M: IntMatrix) -> IntMatrix:
        """P M B for an endomorphism M of F(F_t) preserving the summand."""
        return self.projection @ M @ self.inclusion


def idempotent(expr: FunctorExpr, t: int) -> IntMatrix:
    """prod_j (1 - F(kill x_j)) on F(F_t); its image is the t-th cross-effect."""
    dim = dimension(expr, t)
    e = IntMatrix.identity(dim)
    one = IntMatrix.identity(dim)
    for j in range(1, t + 1):
        e = (one - induced(expr, kill(t, [j]))) @ e
    return e


@lru_cache(maxsize=1024)
def cross_effect(expr: FunctorExpr, t: int) -> CrossEffectModule:
    if t < 0:
        raise ValueError("t must be >= 0")
    dim = dimension(expr, t)
    e = idempotent(expr, t)
    cols = e.columns()
    lat = Lattice(cols)
    B = lat.matrix(dim)
    proj_cols = []
    for c in cols:
        coords = lat.coordinates(c)
        assert coords is not None
        proj_cols.append({n: x for n, x in enumerate(coords) if x})
    P = IntMatrix.from_columns(lat.rank, proj_cols)
    swaps = []
    for s in range(1, t):
        perm = list(range(1, t + 1))
        perm[s - 1], perm[s] = perm[s], perm[s - 1]
        swaps.append(P @ induced(expr, permutation(perm)) @ B)
    return CrossEffectModule(expr, t, B, P, tuple(swaps))


def hom_reduced_tensor(d: int, expr: FunctorExpr) -> list[dict[int, int]]:
    """Hom(Pbar^{(x)d}, F) by Yoneda: elements of F(F_d) killed by every
    codegeneracy F_d -> F_{d-1}. Returned as a canonical lattice basis."""
    if d == 0:
        return [{i: 1} for i in range(dimension(expr, 0))]
    rows: dict[int, dict[int, int]] = {}
    offset = 0
    for j in range(1, d + 1):
        M = induced(expr, codegeneracy(d, j))
        for i in range(M.rows):
            r = M.row(i)
            if r:
                rows[offset + i] = r
        offset += M.rows
    stacked = IntMatrix(offset, dimension(expr, d), rows)
    return kernel_basis(stacked)


# ---------------------------------------------------------------------------
# Natural transformations between the summands Pbar^{(x)m}


@lru_cache(maxsize=4096)
def merge_matrix(expr: FunctorExpr, groups: tuple[int, ...]) -> IntMatrix:
    """Pull back along Pbar^{(x)m} -> Pbar^{(x)s} multiplying consecutive groups.

    ``groups`` lists the group sizes (summing to m). The result F(F_s) ->
    F(F_m) is the sum over nonempty S_u inside each group of
    prod_u (-1)^{|g_u| - |S_u|} F(alpha_S), where alpha_S sends x_u to the
    ordered product of the x_v with v in S_u. It maps cr_s F into cr_m F.
    """
    s = len(groups)
    m = sum(groups)
    starts = [sum(groups[:u]) for u in range(s)]
    choices = []
    for u, g in enumerate(groups):
        opts = []
        for size in range(1, g + 1):
            for S in itertools.combinations(range(starts[u] + 1, starts[u] + g + 1), size):
                opts.append(((-1) ** (g - size), S))
        choices.append(opts)
    total = IntMatrix(dimension(expr, m), dimension(expr, s))
    for combo in itertools.product(*choices):
        sign = 1
        images = []
        for c, S in combo:
            sign *= c
            images.append(S)
        alpha = GrMorphism.from_letters(m, images)
        total = total + induced(expr, alpha) * sign
    return total


# ---------------------------------------------------------------------------
# kappa and the Passi functors


def kappa_matrix(expr: FunctorExpr, d: int, m: int) -> IntMatrix:
    """sum over I in {0..d} of (-1)^|I| F(p_I): F(F_m^{*(d+1)}) -> F(F_m).

    p_I is the identity on the copies indexed by I and trivial on the others.
    """
    total = IntMatrix(dimension(expr, m), dimension(expr, m * (d + 1)))
    for size in range(d + 2):
        for I in itertools.combinations(range(d + 1), size):
            images = []
            for c in range(d + 1):
                for a in range(1, m + 1):
                    images.append((a,) if c in I else ())
            total = total + induced(expr, GrMorphism.from_letters(m, images)) * (-1) ** size
    return total


def _products_span(ring: TruncGroupRing, ball, d: int) -> Lattice:
    """Z-span of all (d+1)-fold products (g_0 - 1)...(g_d - 1), g_i in ball.

    By bilinearity it is enough to multiply a basis of the d-fold span by a
    basis of the span of the g - 1.
    """
    one = ring.one()
    first = Lattice((ring.group_element(g) - one).vector() for g in ball)
    level = first
    for _ in range(d):
        nxt = Lattice()
        right = [ring.from_vector(v) for v in first.basis()]
        for v in level.basis():
            b = ring.from_vector(v)
            bdeg = b.min_degree()
            for c in right:
                if bdeg + c.min_degree() <= ring.cutoff:
                    nxt.add_vector((b * c).vector())
        level = nxt
    return level


def kappa_image_rank(d: int, N: int, ell: int, n: int = 1, m: int = 1) -> RankReport:
    """Span of the kappa_d images in Z[G^n]/I^{N+1}, G = F_m, words of length <= ell.

    The image of kappa_d(P_n) on [g_0 * ... * g_d] is prod_j (1 - g_j); the
    report compares the span of these products with I^{d+1}/I^{N+1}, both
    as lattices, at ell and at ell - 1.
    """
    if N < d + 1:
        raise ValueError("cutoff must be at least d + 1")
    ring = TruncGroupRing((m,) * n, N)
    target = Lattice({i: 1} for i in ring.degree_indices(d + 1))
    spans = []
    for radius in (ell - 1, ell):
        lat = _products_span(ring, product_ball((m,) * n, max(radius, 0)), d)
        spans.append(lat)
    here, before = spans[1], spans[0]
    equal = here.basis() == target.basis()
    return RankReport(
        query="kappa_image_rank",
        params={"d": d, "cutoff": N, "length": ell, "n": n, "rank_of_G": m},
        rank=here.rank,
        torsion=[],
        stable=before.basis() == here.basis(),
        extra={"expected_rank": target.rank, "spans_ideal_power": equal},
    )


def kappa_elementwise(d: int, N: int, n: int = 1, m: int = 1, samples: int = 50,
                      radius: int = 2, seed: int = 0) -> int:
    """Check kappa_d(P_n)[g_0 * ... * g_d] = (-1)^{d+1} (g_0 - 1)...(g_d - 1).

    The left side is the alternating sum over subsets of the products of the
    g_j, evaluated one group element at a time; the right side uses ring
    multiplication. Returns the number of random tuples checked.
    """
    ring = TruncGroupRing((m,) * n, N)
    ball = product_ball((m,) * n, radius)
    rng = random.Random(seed)
    one = ring.one()
    for _ in range(samples):
        gs = [rng.choice(ball) for _ in range(d + 1)]
        lhs = ring.one() * 0
        for size in range(d + 2):
            for S in itertools.combinations(range(d + 1), size):
                words = []
                for t in range(n):
                    w = None
                    for j in S:
                        w = gs[j][t] if w is None else w * gs[j][t]
                    words.append(w if w is not None else gs[0][t].identity(m))
                lhs = lhs + ring.group_element(words) * (-1) ** size
        rhs = one
        for g in gs:
            rhs = rhs * (ring.group_element(g) - one)
        if lhs != rhs * (-1) ** (d + 1):
            raise AssertionError(f"kappa formula fails on {gs}")
    return samples


def _cr_kernel_rank(expr: FunctorExpr, n: int) -> tuple[int, IntMatrix]:
    src = cross_effect(expr, 1)
    tgt = cross_effect(expr, n + 1)
    M = tgt.projection @ induced(expr, fold(n + 1)) @ src.inclusion
    return src.rank - rank(M), M


def hom_passi(n: int, expr: FunctorExpr) -> FinAbGroup:
    """Hom(q_n(Pbar), F): kernel of cr_1 F -> cr_{n+1} F induced by the fold."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return FinAbGroup(0)
    free, _ = _cr_kernel_rank(expr, n)
    return FinAbGroup(free)


def generating_morphisms(K: int) -> list[GrMorphism]:
    """Fixed generating family of gr restricted to ranks <= K."""
    gens: list[GrMorphism] = []
    for k in range(1, K + 1):
        gens.extend(bar_coface(k, i) for i in range(k + 1))
        gens.extend(codegeneracy(k, j) for j in range(1, k + 1))
        gens.append(inversion(k, 1))
        if k >= 2:
            for s in range(1, k):
                perm = list(range(1, k + 1))
                perm[s - 1], perm[s] = perm[s], perm[s - 1]
                gens.append(permutation(perm))
            gens.append(transvection(k))
            gens.append(fold(k))
    return gens


def naturality_system(F: FunctorExpr, G: FunctorExpr, K: int) -> tuple[IntMatrix, int]:
    """Linear system on the unknown components eta_k: F(F_k) -> G(F_k), k <= K."""
    offsets = {}
    total = 0
    for k in range(K + 1):
        offsets[k] = total
        total += dimension(G, k) * dimension(F, k)

    def var(k, a, b):
        return offsets[k] + a * dimension(F, k) + b

    rows: list[dict[int, int]] = []
    for phi in generating_morphisms(K):
        s, d = phi.src_rank, phi.dst_rank
        Gphi, Fphi = induced(G, phi), induced(F, phi)
        Frows = [Fphi.row(b) for b in range(Fphi.rows)]
        for r in range(dimension(G, d)):
            Grow = Gphi.row(r)
            for c in range(dimension(F, s)):
                eq: dict[int, int] = {}
                for a, v in Grow.items():
                    key = var(s, a, c)
                    eq[key] = eq.get(key, 0) + v
                for b in range(dimension(F, d)):
                    v = Frows[b].get(c)
                    if v:
                        key = var(d, r, b)
                        eq[key] = eq.get(key, 0) - v
                eq = {k: v for k, v in eq.items() if v}
                if eq:
                    rows.append(eq)
    return IntMatrix(len(rows), total, dict(enumerate(rows))), total


def nat_hom_oracle(F: FunctorExpr, G: FunctorExpr, K: int) -> FinAbGroup:
    """Natural transformations F -> G on ranks <= K, by brute force.

    The solution set is a kernel of an integer matrix, hence free.
    """
    M, unknowns = naturality_system(F, G, K)
    return FinAbGroup(unknowns - rank(M))


def nat_hom_stable(F: FunctorExpr, G: FunctorExpr, K: int) -> tuple[FinAbGroup, bool]:
    """nat_hom_oracle at K together with whether K + 1 gives the same group."""
    here = nat_hom_oracle(F, G, K)
    return here, nat_hom_oracle(F, G, K + 1) == here


@dataclass(frozen=True)
class SymmetricAction:
    d: int
    labels: tuple
    matrices: dict  # permutation tuple -> IntMatrix


def symmetric_action(d: int) -> SymmetricAction:
    """S_d acting on cr_d(a^{(x)d}) through the permutation automorphisms of F_d."""
    expr = power_of_ab(d)
    cr = cross_effect(expr, d)
    labels = []
    for col in cr.inclusion.columns():
        (i, v), = col.items()
        assert v == 1
        labels.append(_labels(expr, d)[i])
    mats = {}
    for perm in itertools.permutations(range(1, d + 1)):
        mats[perm] = cr.restrict(induced(expr, permutation(perm)))
    return SymmetricAction(d, tuple(labels), mats)


def binomial_dimension(expr: FunctorExpr, k: int) -> int:
    """sum_t C(k, t) rank cr_t(F); equals dim F(F_k) for functors on gr."""
    return sum(math.comb(k, t) * cross_effect(expr, t).rank for t in range(k + 1))


__all__ = [
    "FunctorExpr", "Const", "Ab", "AbPow", "PassiBar", "Tensor", "DirectSum", "power_of_ab",
    "EvaluatedFunctor", "evaluate", "dimension", "induced", "CrossEffectModule", "cross_effect",
    "idempotent", "hom_reduced_tensor", "merge_matrix", "kappa_matrix", "kappa_image_rank",
    "kappa_elementwise",
    "hom_passi", "generating_morphisms", "naturality_system", "nat_hom_oracle", "nat_hom_stable",
    "SymmetricAction", "symmetric_action", "binomial_dimension",
]
