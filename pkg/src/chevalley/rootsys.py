"""Root systems built from Cartan matrices.

Convention: ``A[i][j] = <alpha_i, alpha_j^vee>``, so the pairing of a root with
coordinates ``c`` against the simple coroot ``alpha_j^vee`` is ``sum_i c[i] A[i][j]``.
With this convention C2 is ``[[2, -1], [-2, 2]]`` (alpha_0 short, alpha_1 long).
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

__all__ = [
    "CartanError",
    "CartanSyntaxError",
    "InfiniteTypeError",
    "CartanMatrix",
    "Root",
    "RootSystem",
    "build_root_system",
    "cartan_matrix",
    "parse_type",
    "direct_sum",
    "read_cartan_file",
    "format_cartan_file",
    "pairing",
    "reflect",
    "depth_chain",
    "is_root",
]


class CartanError(ValueError):
    """Malformed Cartan data."""


class CartanSyntaxError(CartanError):
    """Unknown type name or malformed Cartan file."""


class InfiniteTypeError(CartanError):
    """The Cartan matrix is not of finite type."""


@dataclass(frozen=True)
class CartanMatrix:
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        n = len(rows)
        if n == 0:
            raise CartanError("empty Cartan matrix")
        for i, row in enumerate(rows):
            if len(row) != n:
                raise CartanError(f"row {i} has {len(row)} entries, expected {n}")
            if row[i] != 2:
                raise CartanError(f"diagonal entry A[{i}][{i}] = {row[i]}, expected 2")
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                a = rows[i][j]
                if a not in (0, -1, -2, -3):
                    raise CartanError(f"off-diagonal entry A[{i}][{j}] = {a} not in {{0,-1,-2,-3}}")
                if (a == 0) != (rows[j][i] == 0):
                    raise CartanError(f"A[{i}][{j}] and A[{j}][{i}] must vanish together")

    @property
    def rank(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64)

    def components(self) -> list[list[int]]:
        """Connected components of the Dynkin diagram, each sorted."""
        n = self.rank
        seen = [False] * n
        comps = []
        for s in range(n):
            if seen[s]:
                continue
            comp, todo = [], [s]
            seen[s] = True
            while todo:
                i = todo.pop()
                comp.append(i)
                for j in range(n):
                    if j != i and self.entries[i][j] != 0 and not seen[j]:
                        seen[j] = True
                        todo.append(j)
            comps.append(sorted(comp))
        return comps


@dataclass(frozen=True)
class Root:
    index: int
    coords: tuple[int, ...]
    coroot_coords: tuple[int, ...]
    sq_length: int
    height: int

    @property
    def positive(self) -> bool:
        return self.height > 0


# -- named types -------------------------------------------------------------

_TYPE_RE = re.compile(r"^([A-G])([0-9]+)$")


def cartan_matrix(family: str, n: int) -> CartanMatrix:
    """Cartan matrix of a named irreducible type, Bourbaki numbering."""
    family = family.upper()
    if family == "A" and n >= 1:
        pass
    elif family in "BC" and n >= 2:
        pass
    elif family == "D" and n >= 4:
        pass
    elif family == "E" and n in (6, 7, 8):
        pass
    elif family == "F" and n == 4:
        pass
    elif family == "G" and n == 2:
        pass
    else:
        raise CartanSyntaxError(f"no root system of type {family}{n}")

    A = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, aij=-1, aji=-1):
        A[i][j], A[j][i] = aij, aji

    if family in "ABCD":
        for i in range(n - 2):
            link(i, i + 1)
        if family == "A" and n >= 2:
            link(n - 2, n - 1)
        elif family == "B":
            # alpha_n short
            link(n - 2, n - 1, -2, -1)
        elif family == "C":
            # alpha_n long
            link(n - 2, n - 1, -1, -2)
        elif family == "D":
            A[n - 3][n - 2] = A[n - 2][n - 3] = 0
            link(n - 3, n - 2)
            link(n - 3, n - 1)
    elif family == "E":
        link(0, 2)
        link(2, 3)
        link(1, 3)
        for i in range(3, n - 1):
            link(i, i + 1)
    elif family == "F":
        link(0, 1)
        link(1, 2, -2, -1)
        link(2, 3)
    elif family == "G":
        # alpha_1 short, alpha_2 long
        link(0, 1, -1, -3)
    return CartanMatrix(tuple(tuple(r) for r in A))


def direct_sum(*parts: CartanMatrix) -> CartanMatrix:
    n = sum(p.rank for p in parts)
    A = [[0] * n for _ in range(n)]
    off = 0
    for p in parts:
        for i, row in enumerate(p.entries):
            A[off + i][off:off + p.rank] = row
        off += p.rank
    return CartanMatrix(tuple(tuple(r) for r in A))


def parse_type(name: str) -> CartanMatrix:
    """``"E8"``, or a product such as ``"A1xB2"``."""
    pieces = name.strip().split("x")
    mats = []
    for piece in pieces:
        m = _TYPE_RE.match(piece)
        if not m:
            raise CartanSyntaxError(f"cannot parse type name {name!r}")
        mats.append(cartan_matrix(m.group(1), int(m.group(2))))
    return mats[0] if len(mats) == 1 else direct_sum(*mats)


def read_cartan_file(path) -> CartanMatrix:
    """Read ``rank`` on the first line followed by ``rank`` rows of integers."""
    text = Path(path).read_text()
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise CartanSyntaxError("empty Cartan file")
    try:
        rank = int(lines[0][0])
        rows = [tuple(int(x) for x in ln) for ln in lines[1:]]
    except ValueError as exc:
        raise CartanSyntaxError(f"non-integer entry in Cartan file: {exc}") from None
    if len(lines[0]) != 1 or rank < 1 or len(rows) != rank:
        raise CartanSyntaxError(f"Cartan file declares rank {lines[0]} but has {len(rows)} rows")
    return CartanMatrix(tuple(rows))


def format_cartan_file(cartan: CartanMatrix) -> str:
    out = [str(cartan.rank)]
    out += [" ".join(str(x) for x in row) for row in cartan.entries]
    return "\n".join(out) + "\n"


# -- the root system ---------------------------------------------------------


def _simple_lengths(cartan: CartanMatrix) -> list[int]:
    """Squared lengths of simple roots, shortest root of each component = 1."""
    n = cartan.rank
    lengths: list[Optional[Fraction]] = [None] * n
    for comp in cartan.components():
        lengths[comp[0]] = Fraction(1)
        todo = [comp[0]]
        while todo:
            i = todo.pop()
            for j in comp:
                if j == i or cartan[i, j] == 0:
                    continue
                # |alpha_j|^2 / |alpha_i|^2 = A[j][i] / A[i][j]
                lj = lengths[i] * Fraction(cartan[j, i], cartan[i, j])
                if lengths[j] is None:
                    lengths[j] = lj
                    todo.append(j)
                elif lengths[j] != lj:
                    raise CartanError("Cartan matrix is not symmetrizable")
        lo = min(lengths[i] for i in comp)
        for i in comp:
            lengths[i] /= lo
            if lengths[i].denominator != 1 or lengths[i] not in (1, 2, 3):
                raise InfiniteTypeError(f"root length ratio {lengths[i]} impossible in finite type")
    return [int(x) for x in lengths]


def _default_root_bound(rank: int) -> int:
    # largest finite root systems per rank: B_n/C_n (2n^2) and E8 (240)
    return max(2 * rank * rank, 240)


class RootSystem:
    """Complete root inventory of a finite root system.

    Positive roots are indexed ``0 .. npos-1`` sorted by height and then by
    descending coordinate tuple, so simple root ``alpha_i`` has index ``i``.
    The negative of root ``r`` has index ``r + npos`` (or ``r - npos``).

    Attributes
    ----------
    cartan, rank, npos, nroots
    roots : list of :class:`Root`
    coords : (nroots, rank) int array
    coroots : (nroots, rank) int array of coroot coordinates
    sq_lengths, heights : int arrays
    coord_index : dict coords tuple -> index
    reflection_table : (rank, nroots) int array, ``s_i(r)``
    pairing_table : (nroots, rank) int array, ``<r, alpha_i^vee>``
    pair : (nroots, nroots) int array, ``pair[b, g] = <b, g^vee>``
    depth_chains : dict positive root -> (base simple index, chain tuple)
    segments : list of tuples of simple indices
    special : tuple, the special root of each simple root's segment
    d, c : tuples, distance to the special root and ``(-1)**d``
    """

    def __init__(self, cartan: CartanMatrix, max_roots: Optional[int] = None):
        self.cartan = cartan
        self.rank = r = cartan.rank
        A = cartan.array()
        lengths = _simple_lengths(cartan)
        bound = max_roots if max_roots is not None else _default_root_bound(r)

        # breadth-first closure of the simple roots under simple reflections
        simple = [tuple(int(i == j) for j in range(r)) for i in range(r)]
        found = {s: lengths[i] for i, s in enumerate(simple)}
        queue = deque(simple)
        while queue:
            v = queue.popleft()
            pv = np.asarray(v) @ A
            for i in range(r):
                if pv[i] == 0:
                    continue
                w = list(v)
                w[i] -= int(pv[i])
                w = tuple(w)
                if w not in found:
                    if any(x > 0 for x in w) and any(x < 0 for x in w):
                        raise InfiniteTypeError("mixed-sign root encountered")
                    found[w] = found[v]
                    if len(found) > bound:
                        raise InfiniteTypeError(
                            f"root closure exceeded {bound} roots; Cartan matrix is not of finite type"
                        )
                    queue.append(w)

        pos = sorted((v for v in found if sum(v) > 0), key=lambda v: (sum(v), tuple(-x for x in v)))
        ordered = pos + [tuple(-x for x in v) for v in pos]
        self.npos = npos = len(pos)
        self.nroots = nroots = len(ordered)
        if nroots != len(found):
            raise InfiniteTypeError("root set is not closed under negation")

        self.coord_index = {v: k for k, v in enumerate(ordered)}
        coords = np.array(ordered, dtype=np.int64).reshape(nroots, r)
        sq = np.array([found[v] for v in ordered], dtype=np.int64)
        simple_len = np.array(lengths, dtype=np.int64)
        num = coords * simple_len[None, :]
        if np.any(num % sq[:, None]):
            raise CartanError("coroot coordinates are not integral")
        coroots = num // sq[:, None]

        self.coords = coords
        self.coroots = coroots
        self.sq_lengths = sq
        self.heights = coords.sum(axis=1)
        self.simple_lengths = tuple(lengths)
        self.pairing_table = coords @ A
        self.pair = self.pairing_table @ coroots.T

        refl = np.empty((r, nroots), dtype=np.int64)
        for k, v in enumerate(ordered):
            for i in range(r):
                w = list(v)
                w[i] -= int(self.pairing_table[k, i])
                refl[i, k] = self.coord_index[tuple(w)]
        self.reflection_table = refl
        self.negation = np.concatenate([np.arange(npos, nroots), np.arange(npos)])

        self.roots = [
            Root(k, ordered[k], tuple(int(x) for x in coroots[k]), int(sq[k]), int(self.heights[k]))
            for k in range(nroots)
        ]

        self._build_string_table()
        self._build_depth_chains()
        self._build_segments()

        for arr in (self.coords, self.coroots, self.sq_lengths, self.heights, self.pairing_table,
                    self.pair, self.reflection_table, self.negation, self.p_down):
            arr.setflags(write=False)
        # plain-list mirrors for scalar-heavy loops
        self._refl = refl.tolist()
        self._pair = self.pair.tolist()
        self._neg = self.negation.tolist()

    # -- construction helpers -------------------------------------------------

    def _encode(self, coords: np.ndarray) -> np.ndarray:
        span = int(np.abs(self.coords).max()) * 4 + 1  # room for mu - 3 lambda
        off = span // 2
        base = np.int64(span) ** np.arange(self.rank, dtype=np.int64)
        return (coords + off) @ base

    def _build_string_table(self):
        # p_down[l, m] = greatest p >= 0 with m - p*l a root (strings are unbroken)
        keys = np.sort(self._encode(self.coords))
        R = self.nroots
        p = np.zeros((R, R), dtype=np.int64)
        alive = np.ones((R, R), dtype=bool)
        for step in (1, 2, 3):
            cand = self.coords[None, :, :] - step * self.coords[:, None, :]
            enc = self._encode(cand.reshape(-1, self.rank)).reshape(R, R)
            pos = np.searchsorted(keys, enc)
            hit = (pos < len(keys)) & (keys[np.minimum(pos, len(keys) - 1)] == enc)
            alive &= hit
            p += alive
        self.p_down = p

    def _build_depth_chains(self):
        npos, r = self.npos, self.rank
        depth = [0] * npos
        chains: dict[int, tuple[int, tuple[int, ...]]] = {}
        for k in range(npos):
            if self.heights[k] == 1:
                chains[k] = (int(np.argmax(self.coords[k])), ())
                continue
            # shortest chain; ties go to the smallest base, then the smallest word
            best = None
            for i in range(r):
                if self.pairing_table[k, i] > 0:
                    prev = int(self.reflection_table[i, k])
                    base, chain = chains[prev]
                    key = (depth[prev], base, chain + (i,))
                    if best is None or key < best:
                        best = key
            depth[k] = best[0] + 1
            chains[k] = (best[1], best[2])
        self.depth = tuple(depth)
        self.depth_chains = chains

    def _build_segments(self):
        r = self.rank
        A = self.cartan
        L = self.simple_lengths
        seen = [False] * r
        segments = []
        special = [0] * r
        d = [0] * r
        for s in range(r):
            if seen[s]:
                continue
            seen[s] = True
            dist = {s: 0}
            todo = deque([s])
            while todo:
                i = todo.popleft()
                for j in range(r):
                    if j != i and A[i, j] != 0 and L[j] == L[i] and j not in dist:
                        dist[j] = dist[i] + 1
                        seen[j] = True
                        todo.append(j)
            seg = tuple(sorted(dist))
            segments.append(seg)
            for j in seg:
                special[j] = s
                d[j] = dist[j]
        self.segments = segments
        self.special = tuple(special)
        self.d = tuple(d)
        self.c = tuple(-1 if x % 2 else 1 for x in d)

    # -- queries --------------------------------------------------------------

    def neg(self, k: int) -> int:
        return self._neg[k]

    def is_positive(self, k: int) -> bool:
        return k < self.npos

    def is_simple(self, k: int) -> bool:
        return k < self.rank

    def index(self, coords: Sequence[int]) -> Optional[int]:
        return self.coord_index.get(tuple(int(x) for x in coords))

    def add(self, a: int, b: int) -> Optional[int]:
        """Index of root a + b, or None."""
        ca, cb = self.roots[a].coords, self.roots[b].coords
        return self.coord_index.get(tuple(x + y for x, y in zip(ca, cb)))

    @property
    def dim(self) -> int:
        return self.nroots + self.rank

    def __repr__(self):
        return f"RootSystem(rank={self.rank}, roots={self.nroots})"


def build_root_system(cartan: CartanMatrix, max_roots: Optional[int] = None) -> RootSystem:
    return RootSystem(cartan, max_roots=max_roots)


def pairing(sys: RootSystem, lam: int, i: int) -> int:
    return int(sys.pairing_table[lam, i])


def reflect(sys: RootSystem, i: int, lam: int) -> int:
    return sys._refl[i][lam]


def depth_chain(sys: RootSystem, lam: int) -> tuple[int, tuple[int, ...]]:
    """``(base, chain)`` with ``s_{chain[-1]} ... s_{chain[0]} alpha_base = lam``."""
    if not sys.is_positive(lam):
        raise ValueError("depth chains are defined for positive roots")
    return sys.depth_chains[lam]


def is_root(sys: RootSystem, coords: Sequence[int]) -> Optional[int]:
    return sys.index(coords)
