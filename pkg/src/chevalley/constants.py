"""Structure constants on the invariant basis.

``[e_lam, e_mu] = N_{lam,mu} e_{lam+mu}`` when ``lam + mu`` is a root. Constants are
computed for ordered Tits triples by descending the root graph to a simple
``lam`` and are stored once per class of ordered pairs under cyclic rotation of
the triple and the Chevalley involution; every other constant follows from
``N_{x,y} = s * (p_{x,y} + 1)`` with ``s`` the class sign.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from .elements import BasisLabel, E, H, LieElement
from .kottwitz import SignTable, build_sign_table, c_sign
from .rootsys import CartanMatrix, RootSystem

__all__ = [
    "BasisLabel",
    "LieElement",
    "TitsTriple",
    "StructureTable",
    "p_string",
    "tits_triple",
    "order_triple",
    "canonical_key",
    "n_ordered",
    "full_table",
    "structure_constant",
    "basis_bracket",
    "bracket",
    "h_root",
]


class TitsTriple(NamedTuple):
    lam: int
    mu: int
    nu: int


def p_string(sys: RootSystem, lam: int, mu: int) -> int:
    """Greatest ``p >= 0`` with ``mu - p lam`` a root."""
    if mu == lam or mu == sys.neg(lam):
        raise ValueError("p_string needs lam != +-mu")
    if sys._pair[mu][lam] <= 0:
        rl, rm = sys.roots[lam].coords, sys.roots[mu].coords
        return 1 if tuple(b - a for a, b in zip(rl, rm)) in sys.coord_index else 0
    return int(sys.p_down[lam, mu])


def tits_triple(sys: RootSystem, lam: int, mu: int) -> TitsTriple:
    s = sys.add(lam, mu)
    if s is None:
        raise ValueError(f"roots {lam} and {mu} do not sum to a root")
    return TitsTriple(lam, mu, sys.neg(s))


def _check_triple(sys: RootSystem, t) -> TitsTriple:
    t = TitsTriple(*t)
    total = [a + b + c for a, b, c in zip(*(sys.roots[k].coords for k in t))]
    if any(total):
        raise ValueError(f"{t} is not a Tits triple")
    return t


def _rotations(t: TitsTriple):
    lam, mu, nu = t
    return (TitsTriple(lam, mu, nu), TitsTriple(mu, nu, lam), TitsTriple(nu, lam, mu))


def order_triple(sys: RootSystem, t) -> tuple[TitsTriple, bool]:
    """First cyclic rotation with ``<mu, lam^vee> = -1``, negated if ``lam < 0``."""
    t = _check_triple(sys, t)
    for rot in _rotations(t):
        if sys._pair[rot.mu][rot.lam] == -1:
            if sys.is_positive(rot.lam):
                return rot, False
            n = sys.neg
            return TitsTriple(n(rot.lam), n(rot.mu), n(rot.nu)), True
    raise AssertionError(f"no ordered rotation of {t}")  # impossible for genuine triples


def canonical_key(sys: RootSystem, lam: int, mu: int) -> tuple[int, int]:
    """Smallest ``(lam', mu')`` over the ordered, ``lam' > 0`` representatives of the class."""
    t = tits_triple(sys, lam, mu)
    n = sys.neg
    best = None
    for rot in _rotations(t):
        if sys._pair[rot.mu][rot.lam] != -1:
            continue
        key = (rot.lam, rot.mu) if sys.is_positive(rot.lam) else (n(rot.lam), n(rot.mu))
        if best is None or key < best:
            best = key
    return best


def n_ordered(sys: RootSystem, signs: Optional[SignTable], lam: int, mu: int,
              memo: Optional[dict] = None, descent: str = "first") -> int:
    """``N_{lam,mu}`` for an ordered Tits triple with ``lam > 0``.

    ``descent`` picks the simple reflection used to lower ``lam``: the smallest
    index (``"first"``) or the largest (``"last"``). The result cannot depend on it.
    """
    if memo is None:
        memo = {}
    key = (lam, mu)
    if key in memo:
        return memo[key]
    if not sys.is_positive(lam) or sys._pair[mu][lam] != -1 or sys.add(lam, mu) is None:
        raise ValueError(f"({lam}, {mu}) is not an ordered Tits triple with lam > 0")

    path = []
    a, b = lam, mu
    while not sys.is_simple(a) and (a, b) not in memo:
        row = sys.pairing_table[a]
        idx = range(sys.rank) if descent == "first" else range(sys.rank - 1, -1, -1)
        beta = next(j for j in idx if row[j] > 0)
        path.append((a, b, beta))
        refl = sys._refl[beta]
        a, b = refl[a], refl[b]

    if (a, b) in memo:
        value = memo[(a, b)]
    else:
        p = p_string(sys, a, b)
        value = c_sign(sys, a, b) * (-1) ** p * (p + 1)
        memo[(a, b)] = value

    # climb back: N_{s l', s m'} = c(s,l') c(s,m') c(s,-n') N_{l',m'}
    for top_a, top_b, beta in reversed(path):
        refl = sys._refl[beta]
        la, mb = refl[top_a], refl[top_b]
        sm = sys.add(la, mb)
        value = c_sign(sys, beta, la) * c_sign(sys, beta, mb) * c_sign(sys, beta, sm) * value
        memo[(top_a, top_b)] = value
    return value


@dataclass
class StructureTable:
    """Constants ``N`` keyed by canonical class representative ``(lam, mu)``, ``lam > 0``."""

    cartan: CartanMatrix
    entries: dict[tuple[int, int], int] = field(default_factory=dict)

    def __len__(self):
        return len(self.entries)

    def sign(self, sys: RootSystem, key: tuple[int, int]) -> int:
        """``N / (p + 1)`` for a stored key."""
        n = self.entries[key]
        return n // (p_string(sys, *key) + 1)

    def to_records(self, sys: RootSystem) -> list[dict]:
        return [
            {"lambda": list(sys.roots[l].coords), "mu": list(sys.roots[m].coords), "N": n}
            for (l, m), n in sorted(self.entries.items())
        ]

    def to_json(self, sys: RootSystem) -> str:
        return json.dumps(self.to_records(sys), indent=1)

    def to_csv(self, sys: RootSystem) -> str:
        r = sys.rank
        head = [f"lambda_{i}" for i in range(r)] + [f"mu_{i}" for i in range(r)] + ["N"]
        lines = [",".join(head)]
        for rec in self.to_records(sys):
            lines.append(",".join(str(x) for x in rec["lambda"] + rec["mu"] + [rec["N"]]))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_records(cls, sys: RootSystem, records) -> "StructureTable":
        entries = {}
        for rec in records:
            l, m = sys.index(rec["lambda"]), sys.index(rec["mu"])
            if l is None or m is None:
                raise ValueError(f"record {rec} does not name roots of this system")
            entries[(l, m)] = int(rec["N"])
        return cls(sys.cartan, entries)

    @classmethod
    def from_json(cls, sys: RootSystem, text: str) -> "StructureTable":
        return cls.from_records(sys, json.loads(text))


def full_table(sys: RootSystem, signs: Optional[SignTable] = None) -> StructureTable:
    # signs are recomputed from sys when absent; kept for call-site symmetry
    if signs is None:
        signs = build_sign_table(sys)
    memo: dict = {}
    entries = {}
    pair = sys._pair
    for lam in range(sys.npos):
        for mu in range(sys.nroots):
            if pair[mu][lam] == -1:
                key = canonical_key(sys, lam, mu)
                if key not in entries:
                    entries[key] = n_ordered(sys, signs, key[0], key[1], memo)
    return StructureTable(sys.cartan, entries)


def structure_constant(sys: RootSystem, table: StructureTable, lam: int, mu: int) -> int:
    """``N_{lam,mu}``; zero when ``lam + mu`` is neither a root nor zero."""
    if sys.add(lam, mu) is None:
        if mu == sys.neg(lam):
            raise ValueError("[e_lam, e_-lam] lies in the Cartan subalgebra")
        return 0
    key = canonical_key(sys, lam, mu)
    return table.sign(sys, key) * (p_string(sys, lam, mu) + 1)


def h_root(sys: RootSystem, mu: int) -> LieElement:
    """``h_mu`` in the basis ``h_{alpha_i}``, from the coroot coordinates of ``mu``."""
    return LieElement((H(i), c) for i, c in enumerate(sys.roots[mu].coroot_coords) if c)


def basis_bracket(sys: RootSystem, table: StructureTable, a: BasisLabel, b: BasisLabel) -> LieElement:
    if a.kind == "h":
        if b.kind == "h":
            return LieElement()
        return LieElement({E(b.index): int(sys.pairing_table[b.index, a.index])})
    if b.kind == "h":
        return -basis_bracket(sys, table, b, a)
    lam, mu = a.index, b.index
    if mu == sys.neg(lam):
        return h_root(sys, mu)
    s = sys.add(lam, mu)
    if s is None:
        return LieElement()
    return LieElement({E(s): structure_constant(sys, table, lam, mu)})


def bracket(sys: RootSystem, table: StructureTable, x: LieElement, y: LieElement) -> LieElement:
    out = LieElement()
    for a, ca in x:
        for b, cb in y:
            out = out + basis_bracket(sys, table, a, b) * (ca * cb)
    return out
