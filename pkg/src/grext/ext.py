"""Ext groups between polynomial functors on gr.

Sources are tensor powers of the abelianization, resolved by the bar
construction, or Passi functors q_n(Pbar), resolved by a spliced Hochschild
resolution built from sums of reduced tensor powers Pbar^{(x)m}. Applying
Hom(-, F) uses Hom(P^{(x)m}, F) = F(F_m) and Hom(Pbar^{(x)m}, F) = cr_m F, so
every cochain complex here has finite rank in each degree.

Sign convention for the tensor powers of the bar resolution: the summand
indexed by a composition (a_1, ..., a_n) sits in degree a_1 + ... + a_n, and
the face acting on block s carries the extra sign (-1)^{a_1 + ... + a_{s-1}}.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

from .config import Limits
from .functors import (Ab, AbPow, FunctorExpr, PassiBar, cross_effect, dimension, induced,
                       merge_matrix)
from .linalg import (FinAbGroup, IntChainComplex, IntMatrix, ResourceLimitError, block_matrix,
                     homology, rational_homology)
from .magnus import monomials
from .words import GrMorphism, bar_coface, block_sum

MODES = ("normalized", "unnormalized", "both")


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Weak compositions of ``total`` into ``parts`` parts, lexicographic."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def source_arity(source: FunctorExpr) -> tuple[str, int]:
    """('bar', n) for a^{(x)n}, ('passi', n) for q_n(Pbar)."""
    if isinstance(source, Ab):
        return "bar", 1
    if isinstance(source, AbPow):
        return "bar", source.d
    if isinstance(source, PassiBar):
        return "passi", source.d
    raise ValueError(f"unsupported Ext source {source}; use a^n or passi(n)")


def _check_dim(dim: int, what: str, limits: Limits):
    if dim > limits.max_module_dim:
        raise ResourceLimitError(f"{what} has dimension {dim} > {limits.max_module_dim}")


def _check_entries(M: IntMatrix, what: str, limits: Limits):
    if M.nnz > limits.max_matrix_entries:
        raise ResourceLimitError(f"{what} has {M.nnz} entries > {limits.max_matrix_entries}")


def _restricted(M: IntMatrix, src_rank: int, tgt_rank: int, F: FunctorExpr, what: str) -> IntMatrix:
    """P M B between cross-effects, after checking M maps one into the other."""
    src = cross_effect(F, src_rank)
    tgt = cross_effect(F, tgt_rank)
    MB = M @ src.inclusion
    small = tgt.projection @ MB
    if tgt.inclusion @ small != MB:
        raise AssertionError(f"{what} does not preserve the cross-effects")
    return small


# ---------------------------------------------------------------------------
# Bar resolutions of tensor powers of the abelianization


def bar_cochain_complex(n: int, F: FunctorExpr, i_max: int, mode: str = "unnormalized",
                        limits: Limits = Limits()) -> IntChainComplex:
    """Hom from the n-fold tensor power of the bar resolution of a into F.

    Degrees 0 .. i_max + 1 are built. In degree i the unnormalized module is
    one copy of F(F_{i+n}) per composition of i into n parts; the normalized
    one replaces each copy by cr_{i+n} F.
    """
    if n < 1 or i_max < 0:
        raise ValueError("need n >= 1 and i_max >= 0")
    if mode not in ("normalized", "unnormalized"):
        raise ValueError(f"unknown mode {mode!r}")
    top = i_max + 1
    comps = [list(compositions(i, n)) for i in range(top + 1)]
    block_dims = []
    for i in range(top + 1):
        # the ambient F(F_{i+n}) is materialized in both modes
        _check_dim(dimension(F, i + n), f"F(F_{i + n})", limits)
        d = dimension(F, i + n) if mode == "unnormalized" else cross_effect(F, i + n).rank
        _check_dim(d * len(comps[i]), f"cochain module in degree {i}", limits)
        block_dims.append(d)
    maps = {}
    for i in range(top):
        pos = {a: p for p, a in enumerate(comps[i + 1])}
        blocks: dict[tuple[int, int], IntMatrix] = {}
        for col, a in enumerate(comps[i]):
            for s in range(n):
                b = a[:s] + (a[s] + 1,) + a[s + 1:]
                sign = (-1) ** sum(a[:s])
                D = _bar_block(F, a, s) * sign
                if mode == "normalized":
                    D = _restricted(D, i + n, i + n + 1, F, f"bar differential {a} -> {b}")
                row = pos[b]
                blocks[(row, col)] = blocks[(row, col)] + D if (row, col) in blocks else D
        M = block_matrix([block_dims[i + 1]] * len(comps[i + 1]), [block_dims[i]] * len(comps[i]), blocks)
        _check_entries(M, f"differential out of degree {i}", limits)
        maps[i] = M
    dims = [block_dims[i] * len(comps[i]) for i in range(top + 1)]
    return IntChainComplex(dims, maps, cochain=True)


@lru_cache(maxsize=4096)
def _bar_block(F: FunctorExpr, a: tuple[int, ...], s: int) -> IntMatrix:
    """sum_j (-1)^j F(theta_j), theta_j the j-th coface on block s."""
    size = a[s] + 2
    total = None
    for j in range(size + 1):
        parts = [GrMorphism.identity(x + 1) for x in a]
        parts[s] = bar_coface(size, j)
        M = induced(F, block_sum(parts)) * (-1) ** j
        total = M if total is None else total + M
    return total


# ---------------------------------------------------------------------------
# Resolution of the Passi functors


@dataclass(frozen=True)
class ResolutionTerm:
    label: tuple
    factors: int  # the term is Pbar^{(x) factors}


@dataclass(frozen=True)
class ResolutionMap:
    """coeff times the map multiplying consecutive groups of factors."""

    src: int
    tgt: int
    coeff: int
    groups: tuple[int, ...]


@dataclass
class PassiResolution:
    """Chain complex of sums of Pbar^{(x)m} resolving q_n(Pbar).

    ``terms[j]`` lists the summands in degree j; ``maps[j]`` lists the
    components of the differential from degree j to degree j - 1.
    """

    n: int
    length: int
    terms: list[list[ResolutionTerm]]
    maps: dict[int, list[ResolutionMap]]

    def describe(self) -> list[dict]:
        return [{"degree": j, "summands": [f"Pbar^{t.factors}" for t in terms]}
                for j, terms in enumerate(self.terms)]


@lru_cache(maxsize=None)
def _tower(r: int, top: int):
    """Resolution of I^r by sums of Pbar^{(x)m}, degrees 0..top.

    Summands in degree l are labelled by compositions of l into r - 1 parts
    and have l + r factors.
    """
    if r == 1:
        terms = [[()]] + [[] for _ in range(top)]
        return terms, {}
    lower_terms, lower_maps = _tower(r - 1, top)
    terms = [list(compositions(j, r - 1)) for j in range(top + 1)]
    maps: dict[int, list[ResolutionMap]] = {}
    for j in range(1, top + 1):
        tgt_pos = {lab: p for p, lab in enumerate(terms[j - 1])}
        entries = []
        m = j + r
        for src, lab in enumerate(terms[j]):
            k, lam = lab[0], lab[1:]
            if k >= 1:
                for i in range(k + 1):
                    groups = (1,) * i + (2,) + (1,) * (m - i - 2)
                    entries.append(ResolutionMap(src, tgt_pos[(k - 1,) + lam], (-1) ** i, groups))
            l = j - k
            if l >= 1:
                lower_src = {x: p for p, x in enumerate(lower_terms[l])}[lam]
                for e in lower_maps[l]:
                    if e.src != lower_src:
                        continue
                    lam2 = lower_terms[l - 1][e.tgt]
                    entries.append(ResolutionMap(src, tgt_pos[(k,) + lam2], (-1) ** k * e.coeff,
                                                 (1,) * (k + 1) + e.groups))
        maps[j] = entries
    return terms, maps


def passi_resolution(n: int, length: int) -> PassiResolution:
    """Degrees 0..length of a resolution of q_n(Pbar) = Pbar / I^{n+1}.

    Degree 0 is Pbar; degree j + 1 is the degree-j part of the resolution of
    I^{n+1}, mapped to Pbar by multiplying all factors.
    """
    if length < 1:
        raise ValueError("resolution length must be >= 1")
    if n == 0:
        return PassiResolution(0, length, [[] for _ in range(length + 1)], {})
    terms_r, maps_r = _tower(n + 1, max(length - 1, 0))
    terms = [[ResolutionTerm((), 1)]]
    for j in range(length):
        terms.append([ResolutionTerm(lab, j + n + 1) for lab in terms_r[j]])
    maps = {1: [ResolutionMap(0, 0, 1, (n + 1,))]}
    for j in range(1, length):
        maps[j + 1] = list(maps_r[j])
    return PassiResolution(n, length, terms, maps)


def passi_cochain_complex(n: int, F: FunctorExpr, length: int,
                          limits: Limits = Limits()) -> IntChainComplex:
    """Hom(passi_resolution(n, length), F) with Hom(Pbar^{(x)m}, F) = cr_m F."""
    res = passi_resolution(n, length)
    dims_blocks = []
    for j, terms in enumerate(res.terms):
        for t in terms:
            _check_dim(dimension(F, t.factors), f"F(F_{t.factors})", limits)
        ds = [cross_effect(F, t.factors).rank for t in terms]
        _check_dim(sum(ds), f"cochain module in degree {j}", limits)
        dims_blocks.append(ds)
    maps = {}
    for j in range(1, length + 1):
        blocks: dict[tuple[int, int], IntMatrix] = {}
        for e in res.maps[j]:
            src_t = res.terms[j][e.src]
            tgt_t = res.terms[j - 1][e.tgt]
            M = _restricted(merge_matrix(F, e.groups), tgt_t.factors, src_t.factors, F,
                            f"resolution map {e}") * e.coeff
            key = (e.src, e.tgt)
            blocks[key] = blocks[key] + M if key in blocks else M
        M = block_matrix(dims_blocks[j], dims_blocks[j - 1], blocks)
        _check_entries(M, f"differential into degree {j}", limits)
        maps[j - 1] = M
    return IntChainComplex([sum(ds) for ds in dims_blocks], maps, cochain=True)


# ---------------------------------------------------------------------------
# Ext tables


@dataclass
class ExtTable:
    source: str
    target: str
    i_max: int
    mode: str
    groups: list[FinAbGroup]
    dims: dict[str, list[int]] = field(default_factory=dict)
    timings_ms: dict[str, int] = field(default_factory=dict)
    modes_agree: bool | None = None

    def to_json(self, timing: bool = True) -> dict:
        params = {"source": self.source, "target": self.target, "max_degree": self.i_max,
                  "mode": self.mode, "complex_dims": self.dims}
        if self.modes_agree is not None:
            params["modes_agree"] = self.modes_agree
        return {
            "query": "ext",
            "params": params,
            "groups": [{"degree": i, "rank": g.free_rank, "torsion": list(g.torsion)}
                       for i, g in enumerate(self.groups)],
            "timing_ms": sum(self.timings_ms.values()) if timing else 0,
        }


def _cohomology(C: IntChainComplex, i_max: int, jobs: int, fn=homology) -> list:
    degrees = list(range(i_max + 1))
    if jobs > 1 and len(degrees) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, [C] * len(degrees), degrees))
    return [fn(C, i) for i in degrees]


def _complex_for(source: FunctorExpr, F: FunctorExpr, i_max: int, mode: str,
                 limits: Limits) -> IntChainComplex:
    kind, n = source_arity(source)
    if kind == "bar":
        return bar_cochain_complex(n, F, i_max, mode, limits)
    return passi_cochain_complex(n, F, i_max + 1, limits)


def ext(source: FunctorExpr, F: FunctorExpr, i_max: int, mode: str = "normalized",
        limits: Limits = Limits(), jobs: int = 1) -> ExtTable:
    """Ext^i(source, F) for i = 0..i_max.

    With mode "both" the two bar complexes are computed and compared; the
    table carries the normalized groups and ``modes_agree``. Passi sources
    always use their own resolution and ignore the mode.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    kind, _ = source_arity(source)
    if kind == "passi":
        return ext_passi(source.d, F, i_max, limits=limits, jobs=jobs)
    run = ("normalized", "unnormalized") if mode == "both" else (mode,)
    results = {}
    dims = {}
    timings = {}
    for m in run:
        t0 = time.perf_counter()
        C = _complex_for(source, F, i_max, m, limits)
        results[m] = _cohomology(C, i_max, jobs)
        dims[m] = list(C.dims)
        timings[m] = int((time.perf_counter() - t0) * 1000)
    agree = None
    if mode == "both":
        agree = results["normalized"] == results["unnormalized"]
    return ExtTable(str(source), str(F), i_max, mode, results[run[0]], dims, timings, agree)


def ext_passi(n: int, F: FunctorExpr, i_max: int, length: int | None = None,
              limits: Limits = Limits(), jobs: int = 1) -> ExtTable:
    """Ext^i(q_n(Pbar), F) from the Passi resolution truncated at ``length``."""
    length = i_max + 1 if length is None else length
    if length < i_max + 1:
        raise ValueError(f"resolution length {length} too small for Ext degree {i_max}")
    t0 = time.perf_counter()
    C = passi_cochain_complex(n, F, length, limits)
    groups = _cohomology(C, i_max, jobs)
    ms = int((time.perf_counter() - t0) * 1000)
    return ExtTable(str(PassiBar(n)), str(F), i_max, "passi", groups,
                    {"passi": list(C.dims)}, {"passi": ms})


def rational_ext(source: FunctorExpr, F: FunctorExpr, i_max: int, mode: str = "normalized",
                 limits: Limits = Limits(), jobs: int = 1) -> list[int]:
    """Betti numbers of the complexes used by ``ext``."""
    if mode == "both":
        mode = "normalized"
    C = _complex_for(source, F, i_max, mode, limits)
    return _cohomology(C, i_max, jobs, rational_homology)


# ---------------------------------------------------------------------------
# Graded models: the tensor algebra T on n letters, weight by weight


def _graded_basis(n: int, w: int, mins: tuple[int, ...]) -> list[tuple]:
    """Tuples of monomials over n letters, slot s of length >= mins[s], total w."""
    out = []
    slack = w - sum(mins)
    if slack < 0:
        return out
    for extra in compositions(slack, len(mins)):
        lens = [a + b for a, b in zip(mins, extra)]
        pieces = [monomials(n, L) for L in lens]
        stack = [()]
        for p in pieces:
            stack = [s + (m,) for s in stack for m in p]
        out.extend(stack)
    return out


def _merge_labels(label: tuple, groups: tuple[int, ...]) -> tuple:
    out = []
    pos = 0
    for g in groups:
        out.append(sum(label[pos:pos + g], ()))
        pos += g
    return tuple(out)


@dataclass
class GradedReport:
    query: str
    params: dict
    homology: list[FinAbGroup]
    expected_h0: int
    dims: list[int]

    @property
    def ok(self) -> bool:
        return (self.homology[0] == FinAbGroup(self.expected_h0)
                and all(h.is_zero() for h in self.homology[1:]))

    def to_json(self) -> dict:
        return {"query": self.query, "params": self.params,
                "groups": [{"degree": i, "rank": h.free_rank, "torsion": list(h.torsion)}
                           for i, h in enumerate(self.homology)],
                "expected_h0": self.expected_h0, "dims": self.dims, "ok": self.ok}


def graded_hochschild(n: int, r: int, w: int, max_degree: int = 2) -> GradedReport:
    """Weight-w part of ... -> Tbar^{(x)2} (x) T^{>=r} -> Tbar (x) T^{>=r}.

    In degree k the chains are a_0 (x) ... (x) a_k (x) v with a_i of positive
    length and v of length >= r; the differential is the alternating sum of
    the k + 1 concatenations of neighbours, the last one being a_k v.
    H_0 should be the weight-w part of T^{>=r+1} and higher homology zero.
    """
    if n < 1 or r < 0 or w < 0 or max_degree < 0:
        raise ValueError("bad graded Hochschild parameters")
    bases = [_graded_basis(n, w, (1,) * (k + 1) + (r,)) for k in range(max_degree + 2)]
    maps = {}
    for k in range(1, max_degree + 2):
        index = {b: i for i, b in enumerate(bases[k - 1])}
        cols = []
        for lab in bases[k]:
            col: dict[int, int] = {}
            for i in range(k + 1):
                groups = (1,) * i + (2,) + (1,) * (k - i)
                t = index[_merge_labels(lab, groups)]
                col[t] = col.get(t, 0) + (-1) ** i
            cols.append({t: c for t, c in col.items() if c})
        maps[k] = IntMatrix.from_columns(len(bases[k - 1]), cols)
    C = IntChainComplex([len(b) for b in bases], maps)
    hom = [homology(C, i) for i in range(max_degree + 1)]
    return GradedReport("graded_hochschild", {"n": n, "r": r, "w": w}, hom,
                        n ** w if w >= r + 1 else 0, [len(b) for b in bases])


def graded_passi_check(n: int, k: int, w: int, length: int = 3) -> GradedReport:
    """The Passi resolution evaluated on the graded model T(Z^k) in weight w.

    Pbar becomes Tbar and the structure maps become concatenations, so the
    complex must resolve the weight-w part of Tbar / T^{>=n+1}.
    """
    res = passi_resolution(n, length)
    bases = []
    offsets = []
    for terms in res.terms:
        basis = []
        offs = []
        for t in terms:
            offs.append(len(basis))
            basis.extend(_graded_basis(k, w, (1,) * t.factors))
        bases.append(basis)
        offsets.append(offs)
    maps = {}
    for j in range(1, length + 1):
        tgt_index = [
            {b: offsets[j - 1][p] + i for i, b in enumerate(_graded_basis(k, w, (1,) * t.factors))}
            for p, t in enumerate(res.terms[j - 1])
        ]
        cols: list[dict[int, int]] = [dict() for _ in bases[j]]
        for e in res.maps[j]:
            src_t = res.terms[j][e.src]
            start = offsets[j][e.src]
            for i, lab in enumerate(_graded_basis(k, w, (1,) * src_t.factors)):
                t = tgt_index[e.tgt][_merge_labels(lab, e.groups)]
                col = cols[start + i]
                col[t] = col.get(t, 0) + e.coeff
        maps[j] = IntMatrix.from_columns(len(bases[j - 1]), [{t: c for t, c in col.items() if c} for col in cols])
    C = IntChainComplex([len(b) for b in bases], maps)
    hom = [homology(C, i) for i in range(length)]
    expected = k ** w if 1 <= w <= n else 0
    return GradedReport("graded_passi_check", {"n": n, "k": k, "w": w, "length": length}, hom,
                        expected, [len(b) for b in bases])
