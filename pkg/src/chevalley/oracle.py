"""Integer matrix realizations of A_n and C_n, used as an independent check.

sl(n+1): ``e_i = E_{i,i+1}``.  sp(2n): basis vectors carry weights
``(eps_0, ..., eps_{n-1}, -eps_{n-1}, ..., -eps_0)``, short simple roots
``e_i = E_{i,i+1} - E_{2n-2-i,2n-1-i}`` and the long one ``E_{n-1,n}``; for n = 2
these are exactly the 4x4 frame matrices for Sp(4).  In both families the Tits
opposite is ``e_{-alpha} = -e_alpha^T``.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from math import factorial

import numpy as np

from .constants import StructureTable, canonical_key, structure_constant
from .kottwitz import SignTable, gamma_factor, term
from .rootsys import RootSystem, cartan_matrix

__all__ = [
    "OracleError",
    "MatrixFrame",
    "frame",
    "frame_for",
    "exp_nilpotent",
    "sigma_matrix",
    "sigma_inverse",
    "commutator",
    "k_basis_matrices",
    "k_basis_by_orbit",
    "invariant_basis_matrices",
    "k_rel_frame",
    "OracleReport",
    "verify_against_oracle",
    "theta_failures",
]

SUPPORTED = {"A": range(1, 8), "C": range(2, 5)}


class OracleError(RuntimeError):
    """Internal inconsistency in the matrix realization."""


def _E(dim, i, j):
    m = np.zeros((dim, dim), dtype=np.int64)
    m[i, j] = 1
    return m


def commutator(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return x @ y - y @ x


def exp_nilpotent(x: np.ndarray) -> np.ndarray:
    """Exact ``exp(x)`` for nilpotent integer ``x``; denominators must divide out."""
    n = x.shape[0]
    out = np.eye(n, dtype=np.int64)
    power = np.eye(n, dtype=np.int64)
    for k in range(1, n + 1):
        power = power @ x
        if not power.any():
            return out
        f = factorial(k)
        if np.any(power % f):
            raise OracleError("exponential has non-integral terms")
        out = out + power // f
    if (power @ x).any():
        raise OracleError("matrix is not nilpotent")
    return out


def sigma_matrix(e: np.ndarray, f: np.ndarray) -> np.ndarray:
    """``exp(e) exp(f) exp(e)``."""
    ee = exp_nilpotent(e)
    return ee @ exp_nilpotent(f) @ ee


def sigma_inverse(e: np.ndarray, f: np.ndarray) -> np.ndarray:
    em = exp_nilpotent(-e)
    return em @ exp_nilpotent(-f) @ em


@dataclass
class MatrixFrame:
    type_tag: str
    rank: int
    dim: int
    e_pos: list
    e_neg: list
    h: list
    form: np.ndarray | None = None
    sigma: list = field(default_factory=list)
    sigma_inv: list = field(default_factory=list)

    def conj(self, i: int, x: np.ndarray) -> np.ndarray:
        return self.sigma[i] @ x @ self.sigma_inv[i]


def frame(type_tag: str, rank: int) -> MatrixFrame:
    tag = type_tag.upper()
    if tag not in SUPPORTED or rank not in SUPPORTED[tag]:
        raise ValueError(f"no matrix oracle for {type_tag}{rank}")
    form = None
    if tag == "A":
        dim = rank + 1
        e_pos = [_E(dim, i, i + 1) for i in range(rank)]
    else:
        n = rank
        dim = 2 * n
        e_pos = [_E(dim, i, i + 1) - _E(dim, dim - 2 - i, dim - 1 - i) for i in range(n - 1)]
        e_pos.append(_E(dim, n - 1, n))
        form = np.zeros((dim, dim), dtype=np.int64)
        for i in range(dim):
            form[i, dim - 1 - i] = 1 if i < n else -1
    e_neg = [-e.T.copy() for e in e_pos]
    h = [commutator(f, e) for e, f in zip(e_pos, e_neg)]
    fr = MatrixFrame(tag, rank, dim, e_pos, e_neg, h, form)
    for e, f, hh in zip(e_pos, e_neg, h):
        if not np.array_equal(commutator(hh, e), 2 * e):
            raise OracleError("frame is not an SL2 triple")
    fr.sigma = [sigma_matrix(e, f) for e, f in zip(e_pos, e_neg)]
    fr.sigma_inv = [sigma_inverse(e, f) for e, f in zip(e_pos, e_neg)]
    return fr


def frame_for(sys: RootSystem) -> MatrixFrame | None:
    """The oracle frame for a root system, when its Cartan matrix is A_n or C_n."""
    for tag, ranks in SUPPORTED.items():
        if sys.rank in ranks and sys.cartan == cartan_matrix(tag, sys.rank):
            return frame(tag, sys.rank)
    return None


def _check_frame(fr: MatrixFrame, sys: RootSystem):
    if sys.cartan != cartan_matrix(fr.type_tag, fr.rank):
        raise ValueError("frame type does not match the root system")


def _in_root_space(fr: MatrixFrame, sys: RootSystem, lam: int, x: np.ndarray) -> bool:
    if not x.any():
        return False
    return all(np.array_equal(commutator(fr.h[i], x), sys.pairing_table[lam, i] * x)
               for i in range(sys.rank))


def _triangle(fr, sys, i, lam, x):
    """``s^triangle_i`` acting on ``x`` in the root space of ``lam``."""
    y = fr.conj(i, x)
    return -y if term(sys, lam, i) else y


def k_basis_matrices(fr: MatrixFrame, sys: RootSystem, signs: SignTable | None = None) -> dict:
    """Kottwitz basis by depth chains from ``k_alpha = c_alpha e_alpha``."""
    _check_frame(fr, sys)
    k = {}
    for lam in range(sys.npos):
        base, chain = sys.depth_chains[lam]
        x = sys.c[base] * fr.e_pos[base]
        cur = base
        for i in chain:
            x = _triangle(fr, sys, i, cur, x)
            cur = sys._refl[i][cur]
        if cur != lam or not _in_root_space(fr, sys, lam, x):
            raise OracleError(f"chain replay for root {lam} left its root space")
        k[lam] = x
        # negative root through the same chain, starting from k_{-base} = s^triangle k_base
        y = _triangle(fr, sys, base, base, sys.c[base] * fr.e_pos[base])
        cur = sys.neg(base)
        for i in chain:
            y = _triangle(fr, sys, i, cur, y)
            cur = sys._refl[i][cur]
        if cur != sys.neg(lam) or not _in_root_space(fr, sys, cur, y):
            raise OracleError(f"chain replay for root {cur} left its root space")
        k[cur] = y
    return k


def k_basis_by_orbit(fr: MatrixFrame, sys: RootSystem):
    """Kottwitz basis by breadth-first search from the special roots, which get ``e_alpha``.

    Every simple reflection edge is checked against the defining property
    ``s^triangle_i k_lam = k_{s_i lam}``; returns ``(basis, conflicts)``.
    """
    _check_frame(fr, sys)
    k = {}
    conflicts = []
    todo = deque()
    for seg in sys.segments:
        a = sys.special[seg[0]]
        k[a] = fr.e_pos[a].copy()
        todo.append(a)
    while todo:
        lam = todo.popleft()
        for i in range(sys.rank):
            mu = sys._refl[i][lam]
            y = _triangle(fr, sys, i, lam, k[lam])
            if mu not in k:
                k[mu] = y
                todo.append(mu)
    for lam in range(sys.nroots):
        for i in range(sys.rank):
            mu = sys._refl[i][lam]
            if not np.array_equal(_triangle(fr, sys, i, lam, k[lam]), k[mu]):
                conflicts.append((i, lam))
    return k, conflicts


def invariant_basis_matrices(fr: MatrixFrame, sys: RootSystem, k: dict | None = None) -> dict:
    if k is None:
        k = k_basis_matrices(fr, sys)
    return {lam: gamma_factor(sys, lam) * x for lam, x in k.items()}


def _leading_sign(x: np.ndarray) -> int:
    flat = x.ravel()
    return int(np.sign(flat[np.flatnonzero(flat)[0]]))


def k_rel_frame(fr: MatrixFrame, sys: RootSystem, k: dict | None = None) -> dict[int, int]:
    """Sign of each ``k_lam`` against the root vector whose leading entry is +1."""
    if k is None:
        k = k_basis_matrices(fr, sys)
    return {lam: _leading_sign(x) for lam, x in sorted(k.items())}


def _coefficient(target: np.ndarray, x: np.ndarray):
    """``c`` with ``x = c * target``, or None."""
    pos = np.flatnonzero(target.ravel())[0]
    t = target.ravel()[pos]
    v = x.ravel()[pos]
    if v % t:
        return None
    c = int(v // t)
    return c if np.array_equal(x, c * target) else None


@dataclass
class OracleReport:
    checked: int = 0
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_json(self) -> str:
        return json.dumps({"checked": self.checked, "mismatches": self.mismatches}, indent=1)

    def to_text(self) -> str:
        lines = [f"oracle: checked {self.checked} brackets, {len(self.mismatches)} mismatches"]
        for m in self.mismatches:
            lines.append("  " + json.dumps(m))
        return "\n".join(lines)


def verify_against_oracle(sys: RootSystem, signs: SignTable | None, table: StructureTable,
                          fr: MatrixFrame) -> OracleReport:
    """Compare every bracket of the invariant basis with its matrix commutator.

    Each stored table entry is checked on all six ordered pairs of its class and
    reported at most once; brackets that should vanish or land in the Cartan
    subalgebra are reported individually.
    """
    _check_frame(fr, sys)
    e = invariant_basis_matrices(fr, sys)
    rep = OracleReport()
    coords = lambda k: list(sys.roots[k].coords)
    neg = sys.neg

    # the classes present in the table must be exactly the classes of the system
    keys = set()
    for lam in range(sys.nroots):
        for mu in range(sys.nroots):
            if sys.add(lam, mu) is not None:
                keys.add(canonical_key(sys, lam, mu))
    for key in sorted(keys - set(table.entries)):
        rep.mismatches.append({"kind": "missing", "lambda": coords(key[0]), "mu": coords(key[1])})
    for key in sorted(set(table.entries) - keys):
        rep.mismatches.append({"kind": "spurious", "lambda": coords(key[0]), "mu": coords(key[1])})

    for key in sorted(set(table.entries) & keys):
        lam, mu = key
        nu = neg(sys.add(lam, mu))
        pairs = [(lam, mu), (mu, nu), (nu, lam)]
        pairs += [(neg(x), neg(y)) for x, y in pairs]
        for x, y in pairs:
            rep.checked += 1
            got = _coefficient(e[sys.add(x, y)], commutator(e[x], e[y]))
            want = structure_constant(sys, table, x, y)
            if got != want:
                rep.mismatches.append({"kind": "constant", "lambda": coords(lam), "mu": coords(mu),
                                       "pair": [coords(x), coords(y)], "table": want, "matrix": got})
                break

    for lam in range(sys.nroots):
        for mu in range(sys.nroots):
            if mu == lam or sys.add(lam, mu) is not None:
                continue
            rep.checked += 1
            br = commutator(e[lam], e[mu])
            if mu == neg(lam):
                want = sum(c * h for c, h in zip(sys.roots[mu].coroot_coords, fr.h))
                if not np.array_equal(br, want):
                    rep.mismatches.append({"kind": "cartan", "lambda": coords(lam), "mu": coords(mu)})
            elif br.any():
                rep.mismatches.append({"kind": "zero", "lambda": coords(lam), "mu": coords(mu)})

    if fr.type_tag == "A":
        for lam in theta_failures(fr, sys):
            rep.mismatches.append({"kind": "theta", "lambda": coords(lam)})
        rep.checked += sys.nroots
    return rep


def theta_failures(fr: MatrixFrame, sys: RootSystem, k: dict | None = None) -> list[int]:
    """Roots where ``X -> -X^T`` breaks ``theta(k_g) = (-1)^{ht(g)-1} k_{-g}`` (type A only)."""
    if fr.type_tag != "A":
        raise ValueError("the matrix involution -X^T is only used for type A")
    if k is None:
        k = k_basis_matrices(fr, sys)
    bad = []
    for lam in range(sys.nroots):
        h = int(sys.heights[lam])
        sign = -1 if (abs(h) - 1) % 2 else 1
        if not np.array_equal(-k[lam].T, sign * k[sys.neg(lam)]):
            bad.append(lam)
    return bad
