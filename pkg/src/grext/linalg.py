"""Exact integer linear algebra: sparse matrices, lattices, Hermite and Smith
normal forms, and homology of integer chain complexes.

Matrices act on column vectors: the matrix of a map A -> B has shape
(dim B, dim A), so the matrix of g o f is ``G @ F``.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class ResourceLimitError(RuntimeError):
    pass


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (x, y, g) with x*a + y*b == g == gcd(a, b) >= 0."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


class IntMatrix:
    """Sparse matrix with arbitrary precision integer entries.

    Treated as immutable once built; the mutating helpers are private.
    """

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, data: dict[int, dict[int, int]] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("negative dimension")
        self.rows = rows
        self.cols = cols
        self._data: dict[int, dict[int, int]] = {}
        if data:
            for i, row in data.items():
                if not 0 <= i < rows:
                    raise IndexError(f"row {i} out of range")
                clean = {}
                for j, v in row.items():
                    if not 0 <= j < cols:
                        raise IndexError(f"column {j} out of range")
                    if v:
                        clean[j] = int(v)
                if clean:
                    self._data[i] = clean

    # -- constructors -------------------------------------------------------
    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, {i: {i: 1} for i in range(n)})

    @classmethod
    def from_dense(cls, entries: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = len(entries)
        if cols is None:
            cols = len(entries[0]) if rows else 0
        data = {}
        for i, row in enumerate(entries):
            if len(row) != cols:
                raise ValueError("ragged matrix")
            data[i] = {j: v for j, v in enumerate(row) if v}
        return cls(rows, cols, data)

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[dict[int, int]]) -> "IntMatrix":
        data: dict[int, dict[int, int]] = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    data.setdefault(i, {})[j] = v
        return cls(rows, len(columns), data)

    @classmethod
    def from_triplets(cls, rows: int, cols: int, triplets: Iterable[tuple[int, int, int]]) -> "IntMatrix":
        data: dict[int, dict[int, int]] = {}
        for i, j, v in triplets:
            r = data.setdefault(i, {})
            r[j] = r.get(j, 0) + v
        return cls(rows, cols, data)

    # -- access -------------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self._data.get(i, {}).get(j, 0)

    def row(self, i: int) -> dict[int, int]:
        return dict(self._data.get(i, {}))

    def column(self, j: int) -> dict[int, int]:
        return {i: r[j] for i, r in self._data.items() if j in r}

    def columns(self) -> list[dict[int, int]]:
        cols: list[dict[int, int]] = [{} for _ in range(self.cols)]
        for i, r in self._data.items():
            for j, v in r.items():
                cols[j][i] = v
        return cols

    def triplets(self) -> list[tuple[int, int, int]]:
        return [(i, j, v) for i in sorted(self._data) for j, v in sorted(self._data[i].items())]

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self._data.values())

    def is_zero(self) -> bool:
        return not self._data

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for i, r in self._data.items():
            for j, v in r.items():
                out[i][j] = v
        return out

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    __hash__ = None

    def __repr__(self):
        return f"IntMatrix({self.rows}x{self.cols}, nnz={self.nnz})"

    # -- arithmetic ---------------------------------------------------------
    @property
    def T(self) -> "IntMatrix":
        data: dict[int, dict[int, int]] = {}
        for i, r in self._data.items():
            for j, v in r.items():
                data.setdefault(j, {})[i] = v
        return IntMatrix(self.cols, self.rows, data)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        odata = other._data
        data = {}
        for i, r in self._data.items():
            acc: dict[int, int] = {}
            for k, a in r.items():
                ok = odata.get(k)
                if ok:
                    for j, b in ok.items():
                        acc[j] = acc.get(j, 0) + a * b
            acc = {j: v for j, v in acc.items() if v}
            if acc:
                data[i] = acc
        out = IntMatrix(self.rows, other.cols)
        out._data = data
        return out

    def apply(self, vec: dict[int, int]) -> dict[int, int]:
        """Multiply a sparse column vector."""
        out: dict[int, int] = {}
        for i, r in self._data.items():
            s = 0
            for j, v in r.items():
                x = vec.get(j)
                if x:
                    s += v * x
            if s:
                out[i] = s
        return out

    def _combine(self, other: "IntMatrix", sign: int) -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        data = {i: dict(r) for i, r in self._data.items()}
        for i, r in other._data.items():
            t = data.setdefault(i, {})
            for j, v in r.items():
                s = t.get(j, 0) + sign * v
                if s:
                    t[j] = s
                else:
                    t.pop(j, None)
        out = IntMatrix(self.rows, self.cols)
        out._data = {i: r for i, r in data.items() if r}
        return out

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self * -1

    def __mul__(self, c: int) -> "IntMatrix":
        if not c:
            return IntMatrix(self.rows, self.cols)
        out = IntMatrix(self.rows, self.cols)
        out._data = {i: {j: c * v for j, v in r.items()} for i, r in self._data.items()}
        return out

    __rmul__ = __mul__

    def kron(self, other: "IntMatrix") -> "IntMatrix":
        """Kronecker product, rows/cols of ``self`` major."""
        data = {}
        orows, ocols = other.rows, other.cols
        for i, r in self._data.items():
            for k, s in other._data.items():
                data[i * orows + k] = {
                    j * ocols + l: a * b for j, a in r.items() for l, b in s.items()
                }
        out = IntMatrix(self.rows * orows, self.cols * ocols)
        out._data = {i: r for i, r in data.items() if r}
        return out

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "IntMatrix":
        cpos = {c: n for n, c in enumerate(cols)}
        data = {}
        for n, i in enumerate(rows):
            r = self._data.get(i)
            if r:
                data[n] = {cpos[j]: v for j, v in r.items() if j in cpos}
        return IntMatrix(len(rows), len(cols), data)

    # -- interchange --------------------------------------------------------
    def to_text(self) -> str:
        body = " ".join(f"({i}, {j}, {v})" for i, j, v in self.triplets())
        return f"{self.rows} {self.cols}; {body}".rstrip()

    @classmethod
    def from_text(cls, text: str) -> "IntMatrix":
        head, _, body = text.partition(";")
        rows, cols = (int(x) for x in head.split())
        trip = []
        for chunk in body.split(")"):
            chunk = chunk.strip().lstrip("(")
            if chunk:
                i, j, v = (int(x) for x in chunk.split(","))
                trip.append((i, j, v))
        return cls.from_triplets(rows, cols, trip)

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "entries": [list(t) for t in self.triplets()]}

    @classmethod
    def from_json(cls, obj: dict | str) -> "IntMatrix":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls.from_triplets(obj["rows"], obj["cols"], (tuple(t) for t in obj["entries"]))


def block_diag(mats: Sequence[IntMatrix]) -> IntMatrix:
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    data = {}
    r0 = c0 = 0
    for m in mats:
        for i, r in m._data.items():
            data[r0 + i] = {c0 + j: v for j, v in r.items()}
        r0 += m.rows
        c0 += m.cols
    out = IntMatrix(rows, cols)
    out._data = data
    return out


def block_matrix(row_dims: Sequence[int], col_dims: Sequence[int],
                 blocks: dict[tuple[int, int], IntMatrix]) -> IntMatrix:
    """Assemble a matrix from blocks keyed by (block row, block column)."""
    roff = [0]
    for d in row_dims:
        roff.append(roff[-1] + d)
    coff = [0]
    for d in col_dims:
        coff.append(coff[-1] + d)
    data: dict[int, dict[int, int]] = {}
    for (a, b), m in blocks.items():
        if m.shape != (row_dims[a], col_dims[b]):
            raise ValueError(f"block ({a}, {b}) has shape {m.shape}")
        for i, r in m._data.items():
            t = data.setdefault(roff[a] + i, {})
            for j, v in r.items():
                k = coff[b] + j
                s = t.get(k, 0) + v
                if s:
                    t[k] = s
                else:
                    t.pop(k, None)
    out = IntMatrix(roff[-1], coff[-1])
    out._data = {i: r for i, r in data.items() if r}
    return out


# ---------------------------------------------------------------------------
# Lattices in echelon form


class Lattice:
    """A sublattice of Z^N kept as an echelon basis of sparse row vectors.

    Vectors are dicts {index: value}. Pivots are the smallest nonzero index of
    each basis row and are kept positive.
    """

    def __init__(self, vectors: Iterable[dict[int, int]] = ()):
        self._rows: dict[int, dict[int, int]] = {}
        for v in vectors:
            self.add_vector(v)

    def add_vector(self, vec: dict[int, int]) -> bool:
        """Insert a vector; return True if the rank went up."""
        v = {j: x for j, x in vec.items() if x}
        rows = self._rows
        while v:
            j = min(v)
            row = rows.get(j)
            if row is None:
                if v[j] < 0:
                    v = {k: -x for k, x in v.items()}
                rows[j] = v
                return True
            a, b = row[j], v[j]
            if b % a == 0:
                q = b // a
                v = _axpy(v, row, -q)
            else:
                x, y, g = xgcd(a, b)
                new_row = _lincomb(row, x, v, y)
                v = _lincomb(row, -b // g, v, a // g)
                rows[j] = new_row
        return False

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self._rows)

    def reduce(self) -> "Lattice":
        """Bring entries above each pivot into [0, pivot) (Hermite form)."""
        rows = self._rows
        order = sorted(rows)
        for j in order:
            p_row = rows[j]
            p = p_row[j]
            for i in order:
                if i >= j:
                    break
                r = rows[i]
                x = r.get(j)
                if x is not None and not 0 <= x < p:
                    rows[i] = _axpy(r, p_row, -(x // p))
        return self

    def basis(self) -> list[dict[int, int]]:
        """Reduced echelon basis ordered by pivot; canonical for the lattice."""
        self.reduce()
        return [dict(self._rows[j]) for j in sorted(self._rows)]

    def coordinates(self, vec: dict[int, int]) -> list[int] | None:
        """Coordinates in ``basis()`` order, or None if vec is not in the lattice."""
        self.reduce()
        order = sorted(self._rows)
        index = {j: n for n, j in enumerate(order)}
        coords = [0] * len(order)
        v = {j: x for j, x in vec.items() if x}
        while v:
            j = min(v)
            row = self._rows.get(j)
            if row is None or v[j] % row[j]:
                return None
            q = v[j] // row[j]
            coords[index[j]] = q
            v = _axpy(v, row, -q)
        return coords

    def __contains__(self, vec: dict[int, int]) -> bool:
        return self.coordinates(vec) is not None

    def matrix(self, dim: int) -> IntMatrix:
        """Basis vectors as the columns of a dim x rank matrix."""
        return IntMatrix.from_columns(dim, self.basis())


def _axpy(v: dict[int, int], w: dict[int, int], c: int) -> dict[int, int]:
    out = dict(v)
    for k, x in w.items():
        s = out.get(k, 0) + c * x
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def _lincomb(v: dict[int, int], a: int, w: dict[int, int], b: int) -> dict[int, int]:
    out = {}
    for k in v.keys() | w.keys():
        s = a * v.get(k, 0) + b * w.get(k, 0)
        if s:
            out[k] = s
    return out


def column_lattice(M: IntMatrix) -> Lattice:
    return Lattice(M.columns())


def kernel_basis(M: IntMatrix) -> list[dict[int, int]]:
    """Canonical basis of {x : Mx = 0}; the kernel is always saturated."""
    r = M.rows
    lat = Lattice()
    for j, col in enumerate(M.columns()):
        v = dict(col)
        v[r + j] = 1
        lat.add_vector(v)
    kernel = Lattice()
    for piv in lat.pivots:
        if piv >= r:
            kernel.add_vector({k - r: x for k, x in lat._rows[piv].items()})
    return kernel.basis()


# ---------------------------------------------------------------------------
# Hermite and Smith forms


def hnf(M: IntMatrix | Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix]:
    """Row Hermite normal form H = U M with U unimodular.

    Pivots are positive, entries above a pivot lie in [0, pivot), zero rows
    come last.
    """
    if not isinstance(M, IntMatrix):
        M = IntMatrix.from_dense(M)
    m, n = M.shape
    A = M.to_dense()
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    t = 0
    pivots = []
    for j in range(n):
        if t == m:
            break
        for i in range(t + 1, m):
            b = A[i][j]
            if not b:
                continue
            a = A[t][j]
            if a == 0:
                A[t], A[i] = A[i], A[t]
                U[t], U[i] = U[i], U[t]
                continue
            x, y, g = xgcd(a, b)
            ag, bg = a // g, b // g
            A[t], A[i] = _rowcomb(A[t], x, A[i], y), _rowcomb(A[t], -bg, A[i], ag)
            U[t], U[i] = _rowcomb(U[t], x, U[i], y), _rowcomb(U[t], -bg, U[i], ag)
        if A[t][j] == 0:
            continue
        if A[t][j] < 0:
            A[t] = [-v for v in A[t]]
            U[t] = [-v for v in U[t]]
        p = A[t][j]
        for i in range(t):
            q = A[i][j] // p
            if q:
                A[i] = _rowcomb(A[i], 1, A[t], -q)
                U[i] = _rowcomb(U[i], 1, U[t], -q)
        pivots.append(j)
        t += 1
    return IntMatrix.from_dense(A, n), IntMatrix.from_dense(U, m)


def _rowcomb(r, a, s, b):
    return [a * x + b * y for x, y in zip(r, s)]


def _eliminate_units(M: IntMatrix) -> tuple[int, list[list[int]]]:
    """Peel off unit pivots (Markowitz-style) without changing the Smith form.

    Returns the number of unit pivots and the dense leftover block whose Smith
    form completes that of M.
    """
    rows = {i: dict(r) for i, r in M._data.items()}
    cols: dict[int, set[int]] = {}
    for i, r in rows.items():
        for j in r:
            cols.setdefault(j, set()).add(i)
    heap = [(len(r), i) for i, r in rows.items()]
    heapq.heapify(heap)
    deferred: set[int] = set()
    units = 0
    while heap:
        ln, i = heapq.heappop(heap)
        r = rows.get(i)
        if r is None or len(r) != ln:
            continue
        best = None
        for j, v in r.items():
            if v == 1 or v == -1:
                cnt = len(cols[j])
                if best is None or cnt < best[0]:
                    best = (cnt, j)
                    if cnt == 1:
                        break
        if best is None:
            deferred.add(i)
            continue
        j = best[1]
        p = r[j]
        for i2 in list(cols[j]):
            if i2 == i:
                continue
            r2 = rows[i2]
            f = r2[j] * p
            for k, x in r.items():
                s = r2.get(k, 0) - f * x
                if s:
                    if k not in r2:
                        cols[k].add(i2)
                    r2[k] = s
                else:
                    if k in r2:
                        del r2[k]
                        cols[k].discard(i2)
            if r2:
                deferred.discard(i2)
                heapq.heappush(heap, (len(r2), i2))
            else:
                del rows[i2]
                deferred.discard(i2)
        for k in r:
            cols[k].discard(i)
        del cols[j]
        del rows[i]
        units += 1
    left = sorted(i for i in deferred if i in rows)
    left_cols = sorted({j for i in left for j in rows[i]})
    cpos = {j: n for n, j in enumerate(left_cols)}
    dense = []
    for i in left:
        row = [0] * len(left_cols)
        for j, v in rows[i].items():
            row[cpos[j]] = v
        dense.append(row)
    return units, dense


def _smith_dense(A: list[list[int]]) -> list[int]:
    """Nonzero invariant factors of a small dense matrix (destroys A)."""
    m = len(A)
    n = len(A[0]) if m else 0
    out = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            Ai = A[i]
            for j in range(t, n):
                v = Ai[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        A[t], A[i] = A[i], A[t]
        if j != t:
            for row in A:
                row[t], row[j] = row[j], row[t]
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    Ai, At = A[i], A[t]
                    for k in range(t, n):
                        Ai[k] -= q * At[k]
                    if Ai[t]:
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // p
                    for row in A:
                        row[j] -= q * row[t]
                    if A[t][j]:
                        dirty = True
            if dirty:
                best = None
                for i in range(t, m):
                    if A[i][t] and (best is None or abs(A[i][t]) < best[0]):
                        best = (abs(A[i][t]), i, "r")
                for j in range(t, n):
                    if A[t][j] and (best is None or abs(A[t][j]) < best[0]):
                        best = (abs(A[t][j]), j, "c")
                _, k, kind = best
                if kind == "r":
                    A[t], A[k] = A[k], A[t]
                else:
                    for row in A:
                        row[t], row[k] = row[k], row[t]
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            A[t] = [x + y for x, y in zip(A[t], A[bad])]
        out.append(abs(A[t][t]))
        t += 1
    return out


def snf(M: IntMatrix | Sequence[Sequence[int]]) -> list[int]:
    """Invariant factors d_1 | d_2 | ... | d_r of M, r = rank M (ones included)."""
    if not isinstance(M, IntMatrix):
        M = IntMatrix.from_dense(M)
    units, rest = _eliminate_units(M)
    return [1] * units + _smith_dense(rest)


def rank(M: IntMatrix | Sequence[Sequence[int]]) -> int:
    """Rank over Q."""
    if not isinstance(M, IntMatrix):
        M = IntMatrix.from_dense(M)
    units, rest = _eliminate_units(M)
    return units + _bareiss_rank(rest)


def _bareiss_rank(A: list[list[int]]) -> int:
    A = [row[:] for row in A]
    m = len(A)
    n = len(A[0]) if m else 0
    r = 0
    prev = 1
    for j in range(n):
        piv = next((i for i in range(r, m) if A[i][j]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        p = A[r][j]
        for i in range(r + 1, m):
            a = A[i][j]
            Ai, Ar = A[i], A[r]
            for k in range(j + 1, n):
                Ai[k] = (p * Ai[k] - a * Ar[k]) // prev
            Ai[j] = 0
        prev = p
        r += 1
        if r == m:
            break
    return r


# ---------------------------------------------------------------------------
# Finitely generated abelian groups and chain complexes


@dataclass(frozen=True)
class FinAbGroup:
    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(self.torsion))
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        for t in self.torsion:
            if t < 2:
                raise ValueError("torsion factors must be >= 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"torsion {self.torsion} is not a divisibility chain")

    @classmethod
    def from_factors(cls, free_rank: int, factors: Iterable[int]) -> "FinAbGroup":
        return cls(free_rank, tuple(sorted(f for f in factors if f > 1)))

    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def to_dict(self) -> dict:
        return {"rank": self.free_rank, "torsion": list(self.torsion)}

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank:
            parts.append(f"Z^{self.free_rank}")
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) or "0"


@dataclass
class IntChainComplex:
    """Finite complex of free abelian groups.

    ``dims[i]`` is the rank of the module in degree i (degrees 0..len-1) and
    ``maps[i]`` the differential leaving degree i: into i-1 for chain
    complexes, into i+1 when ``cochain`` is set. Missing maps are zero.
    """

    dims: list[int]
    maps: dict[int, IntMatrix] = field(default_factory=dict)
    cochain: bool = False
    check: bool = True

    def __post_init__(self):
        step = 1 if self.cochain else -1
        for i, d in self.maps.items():
            tgt = i + step
            if not (0 <= i < len(self.dims) and 0 <= tgt < len(self.dims)):
                raise ValueError(f"differential out of degree {i} has no target")
            if d.shape != (self.dims[tgt], self.dims[i]):
                raise ValueError(f"differential out of degree {i} has shape {d.shape}")
        if self.check:
            for i, d in self.maps.items():
                nxt = self.maps.get(i + step)
                if nxt is not None and not (nxt @ d).is_zero():
                    raise ValueError(f"d o d != 0 at degree {i}")

    def out_map(self, i: int) -> IntMatrix:
        step = 1 if self.cochain else -1
        if i in self.maps:
            return self.maps[i]
        tgt = i + step
        return IntMatrix(self.dims[tgt] if 0 <= tgt < len(self.dims) else 0, self.dims[i])

    def in_map(self, i: int) -> IntMatrix:
        step = 1 if self.cochain else -1
        src = i - step
        if src in self.maps:
            return self.maps[src]
        return IntMatrix(self.dims[i], self.dims[src] if 0 <= src < len(self.dims) else 0)

    def to_json(self) -> dict:
        return {
            "cochain": self.cochain,
            "dims": list(self.dims),
            "maps": {str(i): m.to_json() for i, m in sorted(self.maps.items())},
        }

    @classmethod
    def from_json(cls, obj: dict) -> "IntChainComplex":
        return cls(list(obj["dims"]), {int(i): IntMatrix.from_json(m) for i, m in obj["maps"].items()},
                   cochain=obj["cochain"])


def homology(C: IntChainComplex, i: int) -> FinAbGroup:
    """ker(out of i) / im(into i) in canonical form."""
    factors = snf(C.in_map(i))
    free = C.dims[i] - rank(C.out_map(i)) - len(factors)
    return FinAbGroup.from_factors(free, factors)


def rational_homology(C: IntChainComplex, i: int) -> int:
    """Betti number: dimension of the homology with rational coefficients."""
    return C.dims[i] - rank(C.out_map(i)) - rank(C.in_map(i))
