"""Property suites over a complete structure table.

Each suite returns a :class:`SuiteResult` with a case count and the first few
failures.  Jacobi is vectorized: on basis elements every bracket has at most one
term, so a triple reduces to three (code, coefficient) pairs.
"""
from __future__ import annotations

import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .constants import (
    StructureTable,
    bracket,
    canonical_key,
    full_table,
    n_ordered,
    p_string,
)
from .elements import BasisLabel, LieElement
from .kottwitz import (
    c_sign,
    f_vector,
    splitting_action,
    term_table,
)
from .rootsys import RootSystem
from .weyl import WeylElement, compose, element, enumerate_elements, identity_signed

__all__ = [
    "SuiteResult",
    "VerifyConfig",
    "constant_matrix",
    "bracket_arrays",
    "jacobi_violations",
    "check_jacobi",
    "jacobi_reference",
    "check_strings",
    "check_splitting",
    "check_identities",
    "run_suites",
]

MAX_FAILURES = 10


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, item) -> None:
        if len(self.failures) < MAX_FAILURES:
            self.failures.append(item)
        self.details["failed"] = self.details.get("failed", 0) + 1

    def merge(self, other: "SuiteResult") -> None:
        self.cases += other.cases
        for f in other.failures:
            self.fail(f)

    def summary(self) -> str:
        state = "ok" if self.ok else f"FAILED ({self.details.get('failed', len(self.failures))})"
        extra = "".join(f" {k}={v}" for k, v in sorted(self.details.items()) if k != "failed")
        return f"{self.name}: {self.cases} cases {state}{extra}"


@dataclass
class VerifyConfig:
    jacobi_exhaustive_dim: int = 60     # exhaustive Jacobi when dim g <= this
    jacobi_samples: int = 1_000_000
    exhaustive_weyl: int = 50_000       # enumerate W when |W| <= this
    identity_samples: int = 100_000
    splitting_samples: int = 2_000
    seed: int = 0
    threads: int = 0                    # 0: os.cpu_count()


# -- dense constants -----------------------------------------------------------


def constant_matrix(sys: RootSystem, table: StructureTable) -> np.ndarray:
    """``N[lam, mu]`` for all root pairs, 0 where ``lam + mu`` is not a root."""
    R = sys.nroots
    signs = {key: table.sign(sys, key) for key in table.entries}
    N = np.zeros((R, R), dtype=np.int64)
    for lam in range(R):
        for mu in range(R):
            if sys.add(lam, mu) is not None:
                N[lam, mu] = signs[canonical_key(sys, lam, mu)] * (p_string(sys, lam, mu) + 1)
    return N


def bracket_arrays(sys: RootSystem, N: np.ndarray):
    """Bracket of basis elements as ``(code, coef)`` tables over ``dim x dim``.

    Basis codes: roots ``0..R-1`` then ``h_i`` at ``R + i``.  Result codes are root
    indices, or ``dim + mu`` for the coroot element ``h_mu``.
    """
    R, r = sys.nroots, sys.rank
    D = R + r
    code = np.zeros((D, D), dtype=np.int64)
    coef = np.zeros((D, D), dtype=np.int64)
    lam, mu = np.meshgrid(np.arange(R), np.arange(R), indexing="ij")
    s = sys.coords[:, None, :] + sys.coords[None, :, :]
    enc = {tuple(c): k for k, c in enumerate(sys.coords.tolist())}
    sums = np.array([[enc.get(tuple(x), -1) for x in row] for row in s.tolist()], dtype=np.int64)
    opp = np.asarray(sys.negation)[lam] == mu
    code[:R, :R] = np.where(opp, D + mu, np.maximum(sums, 0))
    coef[:R, :R] = np.where(opp, 1, np.where(sums >= 0, N, 0))
    P = sys.pairing_table.astype(np.int64)  # (R, r)
    code[R:, :R] = np.arange(R)[None, :]
    coef[R:, :R] = P.T
    code[:R, R:] = np.arange(R)[:, None]
    coef[:R, R:] = -P
    return code, coef


class _Jacobi:
    def __init__(self, sys: RootSystem, N: np.ndarray):
        self.sys = sys
        self.R = sys.nroots
        self.D = sys.nroots + sys.rank
        self.code, self.coef = bracket_arrays(sys, N)
        self.pair = sys.pair.astype(np.int64)
        self.coroots = sys.coroots.astype(np.int64)

    def _outer(self, a, x_code, x_coef):
        R, D = self.R, self.D
        is_h = x_code >= D
        xr = np.where(is_h, 0, x_code)
        out_code = self.code[a, xr]
        out_coef = self.coef[a, xr] * x_coef
        # [e_rho, h_mu] = -<rho, mu^vee> e_rho ; [h_i, h_mu] = 0
        mu = np.where(is_h, x_code - D, 0)
        a_root = a < R
        ar = np.where(a_root, a, 0)
        h_coef = np.where(a_root, -self.pair[ar, mu], 0) * x_coef
        out_code = np.where(is_h, ar, out_code)
        out_coef = np.where(is_h, h_coef, out_coef)
        return out_code, out_coef

    def violations(self, a, b, c) -> np.ndarray:
        """Boolean mask of triples violating Jacobi."""
        terms = []
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            ic, if_ = self.code[y, z], self.coef[y, z]
            terms.append(self._outer(x, ic, if_))
        codes = np.stack([t[0] for t in terms], axis=1)
        coefs = np.stack([t[1] for t in terms], axis=1)
        root = codes < self.R
        eq = (codes[:, :, None] == codes[:, None, :]) & root[:, None, :]
        acc = (eq * coefs[:, None, :]).sum(axis=2)
        bad = (root & (acc != 0)).any(axis=1)
        hmask = ~root & (coefs != 0)
        mu = np.where(hmask, codes - self.D, 0)
        hsum = (self.coroots[mu] * (coefs * hmask)[:, :, None]).sum(axis=1)
        return bad | hsum.any(axis=1)


def jacobi_violations(sys: RootSystem, N: np.ndarray, a, b, c) -> np.ndarray:
    return _Jacobi(sys, N).violations(np.asarray(a), np.asarray(b), np.asarray(c))


def check_jacobi(sys: RootSystem, table: StructureTable, cfg: Optional[VerifyConfig] = None,
                 exhaustive: Optional[bool] = None, N: Optional[np.ndarray] = None) -> SuiteResult:
    cfg = cfg or VerifyConfig()
    if N is None:
        N = constant_matrix(sys, table)
    J = _Jacobi(sys, N)
    D = J.D
    if exhaustive is None:
        exhaustive = D <= cfg.jacobi_exhaustive_dim
    res = SuiteResult("jacobi")
    res.details["mode"] = "exhaustive" if exhaustive else "random"

    def labels(idx):
        return tuple(BasisLabel("e", int(i)) if i < J.R else BasisLabel("h", int(i - J.R)) for i in idx)

    def run_chunk(args):
        a, b, c = args
        bad = J.violations(a, b, c)
        return len(a), [labels(t) for t in np.stack([a, b, c], axis=1)[bad][:MAX_FAILURES]], int(bad.sum())

    chunks = []
    if exhaustive:
        bb, cc = np.meshgrid(np.arange(D), np.arange(D), indexing="ij")
        bb, cc = bb.ravel(), cc.ravel()
        for a in range(D):
            chunks.append((np.full(bb.shape, a), bb, cc))
    else:
        rng = np.random.default_rng(cfg.seed)
        left = cfg.jacobi_samples
        while left > 0:
            n = min(left, 200_000)
            chunks.append(tuple(rng.integers(0, D, n) for _ in range(3)))
            left -= n
    threads = cfg.threads or os.cpu_count() or 1
    with ThreadPoolExecutor(max_workers=threads) as ex:
        for n, fails, count in ex.map(run_chunk, chunks):
            res.cases += n
            for f in fails:
                res.fail(f)
            if count > len(fails):
                res.details["failed"] = res.details.get("failed", 0) + count - len(fails)
    return res


def jacobi_reference(sys: RootSystem, table: StructureTable, a: BasisLabel, b: BasisLabel,
                     c: BasisLabel):
    """Jacobi sum computed with sparse elements, for cross-checking."""

    def br(x, y):
        return bracket(sys, table, x, y)

    A, B, C = (LieElement.basis(t) for t in (a, b, c))
    return br(A, br(B, C)) + br(B, br(C, A)) + br(C, br(A, B))


# -- string constants and equivariance ------------------------------------------


def check_strings(sys: RootSystem, table: StructureTable, N: Optional[np.ndarray] = None) -> SuiteResult:
    """Magnitudes, twisted cyclic symmetry, theta/W-equivariance, descent and rotation independence."""
    if N is None:
        N = constant_matrix(sys, table)
    res = SuiteResult("strings")
    R = sys.nroots
    neg = np.asarray(sys.negation)
    sq = sys.sq_lengths
    simply_laced = len(set(sq.tolist())) == 1
    mags = set()
    pairs = [(l, m) for l in range(R) for m in range(R) if sys.add(l, m) is not None]
    for l, m in pairs:
        res.cases += 1
        p = p_string(sys, l, m)
        n = int(N[l, m])
        mags.add(abs(n))
        if abs(n) != p + 1:
            res.fail(("magnitude", l, m, n, p))
        if simply_laced and abs(n) != 1:
            res.fail(("simply-laced", l, m, n))
        if N[m, l] != -n:
            res.fail(("antisymmetry", l, m))
        if N[neg[l], neg[m]] != n:
            res.fail(("theta", l, m))
        nu = sys.neg(sys.add(l, m))
        # (p_{l,m}+1)/|nu|^2 = (p_{m,nu}+1)/|l|^2 = (p_{nu,l}+1)/|m|^2, cleared of denominators
        if not ((p + 1) * sq[l] == (p_string(sys, m, nu) + 1) * sq[nu]
                and (p + 1) * sq[m] == (p_string(sys, nu, l) + 1) * sq[nu]):
            res.fail(("twisted-cyclic", l, m))
        # W-equivariance: c(s,l) c(s,m) N_{sl,sm} = c(s,l+m) N_{l,m}
        for i in range(sys.rank):
            rl, rm = sys._refl[i][l], sys._refl[i][m]
            lhs = c_sign(sys, i, l) * c_sign(sys, i, m) * int(N[rl, rm])
            if lhs != c_sign(sys, i, sys.add(l, m)) * n:
                res.fail(("W-equivariance", i, l, m))
    for l in range(R):
        for i in range(sys.rank):
            # on [e_l, e_-l] = h_{-l} the reflection acts without sign
            if c_sign(sys, i, l) * c_sign(sys, i, sys.neg(l)) != 1:
                res.fail(("W-equivariance-cartan", i, l))
    res.details["max_abs_N"] = max(mags) if mags else 0

    # independent recomputation of every ordered representative
    for l, m in pairs:
        if sys._pair[m][l] != -1 or not sys.is_positive(l):
            continue
        first = n_ordered(sys, None, l, m, {}, "first")
        last = n_ordered(sys, None, l, m, {}, "last")
        if first != last or first != N[l, m]:
            res.fail(("descent", l, m, first, last, int(N[l, m])))
    return res


# -- splitting and the sign identities --------------------------------------------


def _weyl_sample(sys: RootSystem, cfg: VerifyConfig, rng: random.Random, count: int):
    elems = enumerate_elements(sys, cfg.exhaustive_weyl)
    if elems is not None:
        return elems, True
    out = []
    for _ in range(count):
        word = [rng.randrange(sys.rank) for _ in range(rng.randint(0, 2 * sys.npos))]
        out.append(element(sys, word))
    return out, False


def _length(sys, w: WeylElement) -> int:
    n = sys.npos
    return sum(1 for k in w.perm[:n] if k >= n)


def check_splitting(sys: RootSystem, cfg: Optional[VerifyConfig] = None) -> SuiteResult:
    """Kottwitz' lift as a homomorphism, permuting the ``k`` basis without signs."""
    cfg = cfg or VerifyConfig()
    rng = random.Random(cfg.seed)
    res = SuiteResult("splitting")
    small = enumerate_elements(sys, 200)
    if small is not None:
        elems, exhaustive = small, True
    else:
        elems, exhaustive = _weyl_sample(sys, VerifyConfig(exhaustive_weyl=0), rng,
                                         min(cfg.splitting_samples, 200))
    res.details["mode"] = "exhaustive" if exhaustive else "sampled"
    act = {w.perm: splitting_action(sys, w) for w in elems}
    ident = identity_signed(sys)
    for w in elems:
        a = act[w.perm]
        res.cases += 1
        if any(s != 1 for s in a.signs):
            res.fail(("sign", w.perm))
        for g in range(sys.nroots):
            if w.perm[g] == g and a.signs[g] != 1:
                res.fail(("fixed-root", w.perm, g))
    for i in range(sys.rank):
        s = splitting_action(sys, (i,))
        res.cases += 1
        if compose(s, s) != ident:
            res.fail(("square", i))
    if exhaustive:
        combos = ((x, y) for x in elems for y in elems)
    else:
        combos = ((rng.choice(elems), rng.choice(elems)) for _ in range(cfg.splitting_samples))
    for x, y in combos:
        xy = x @ y
        if _length(sys, xy) != _length(sys, x) + _length(sys, y):
            continue
        res.cases += 1
        lhs = act.get(xy.perm) or splitting_action(sys, xy)
        if lhs != compose(act[x.perm], act[y.perm]):
            res.fail(("homomorphism", x.perm, y.perm))
    return res


def check_identities(sys: RootSystem, cfg: Optional[VerifyConfig] = None) -> dict[str, SuiteResult]:
    """Mod-2 and integer identities behind the splitting and the height-parity formula."""
    cfg = cfg or VerifyConfig()
    rng = random.Random(cfg.seed)
    T = term_table(sys).astype(np.int64)
    P = sys.pair.astype(np.int64)
    R, npos, r = sys.nroots, sys.npos, sys.rank
    ht = sys.heights.astype(np.int64)
    neg = np.asarray(sys.negation)
    refl = sys.reflection_table
    out = {k: SuiteResult(k) for k in ("tau-identity", "cocycle", "reflection", "w-invariance", "term-sum", "height", "ht-parity")}

    # tau-identity: tau of the identity is trivial
    out["tau-identity"].cases += R
    if f_vector(sys, ()).any():
        out["tau-identity"].fail(("tau_1",))

    # reflection: (-1)^<b, a^vee> = tau_{s_a}(s_a b) tau_{s_a}(b)
    for i in range(r):
        f = T[:, i]
        lhs = P[:, i] % 2
        rhs = (f[refl[i]] + f) % 2
        out["reflection"].cases += R
        for b in np.flatnonzero(lhs != rhs):
            out["reflection"].fail((i, int(b)))

    # term-sum: term(b, g) + term(-b, g) = <b, g^vee> mod 2, all pairs
    bad = (T + T[neg]) % 2 != P % 2
    out["term-sum"].cases += R * R
    for b, g in zip(*np.nonzero(bad)):
        out["term-sum"].fail((int(b), int(g)))

    per_w = R
    elems, exhaustive = _weyl_sample(sys, cfg, rng, max(1, -(-cfg.identity_samples // per_w)))
    for k in ("cocycle", "w-invariance", "height", "ht-parity"):
        out[k].details["mode"] = "exhaustive" if exhaustive else "sampled"
    for w in elems:
        p = np.asarray(w.perm)
        inv = np.flatnonzero(p[:npos] >= npos)
        f = T[:, inv].sum(axis=1) % 2
        csum = P[:, inv].sum(axis=1)

        # w-invariance: term(w b, w g) = term(b, g)
        d = T[np.ix_(p, p)] != T
        out["w-invariance"].cases += R * R
        if d.any():
            b, g = np.argwhere(d)[0]
            out["w-invariance"].fail((w.perm, int(b), int(g)))

        # height: ht(w b) - ht(b) = -sum_{g in R_w} <b, g^vee>
        out["height"].cases += R
        bad = np.flatnonzero(ht[p] - ht != -csum)
        if bad.size:
            out["height"].fail((w.perm, int(bad[0])))

        # ht-parity: F(w, b) + F(w, -b) = ht(w b) - ht(b) mod 2, the sign gap between
        # theta(k_{w b}) and k_{-w b}
        out["ht-parity"].cases += R
        bad = np.flatnonzero((f + f[neg] - (ht[p] - ht)) % 2)
        if bad.size:
            out["ht-parity"].fail((w.perm, int(bad[0])))

        # cocycle: F(s_a y, b) = F(s_a, y b) + F(y, b) whenever s_a y > y
        pinv = np.argsort(p)
        for i in range(r):
            if pinv[i] >= npos:
                continue
            x = refl[i][p]
            invx = np.flatnonzero(x[:npos] >= npos)
            fx = T[:, invx].sum(axis=1) % 2
            out["cocycle"].cases += R
            bad = np.flatnonzero(fx != (T[p, i] + f) % 2)
            if bad.size:
                out["cocycle"].fail((i, w.perm, int(bad[0])))
    return out


def run_suites(sys: RootSystem, table: Optional[StructureTable] = None, jacobi=False, strings=False,
               splitting=False, oracle=False, cfg: Optional[VerifyConfig] = None) -> list[SuiteResult]:
    cfg = cfg or VerifyConfig()
    if table is None:
        table = full_table(sys)
    results = []
    N = constant_matrix(sys, table) if (jacobi or strings) else None
    if jacobi:
        results.append(check_jacobi(sys, table, cfg, N=N))
    if strings:
        results.append(check_strings(sys, table, N))
    if splitting:
        results.append(check_splitting(sys, cfg))
        results.extend(check_identities(sys, cfg).values())
    if oracle:
        from .oracle import frame_for, verify_against_oracle

        fr = frame_for(sys)
        res = SuiteResult("oracle")
        if fr is None:
            res.fail(("unsupported", "matrix oracle covers A1-A7 and C2-C4"))
        else:
            rep = verify_against_oracle(sys, None, table, fr)
            res.cases = rep.checked
            for m in rep.mismatches:
                res.fail(m)
        results.append(res)
    return results
