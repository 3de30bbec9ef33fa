"""Kottwitz' splitting of the extended torus normalizer and the bases it defines.

Sign bookkeeping is done in bits (0/1 mod 2); functions returning signs convert
to +-1 at the boundary.

The model of the adjoint action lives on the semi-canonical basis ``k``:

* ``s._alpha^bullet`` (Tits section) sends ``k_lam`` to ``(-1)^{<<lam, alpha>>} k_{s lam}``,
* the torus element ``tau_w`` scales ``k_beta`` by ``(-1)^{F(w, beta)}``,
* ``w^triangle = w^bullet . tau_w`` with ``w^bullet`` taken along a reduced word.

Kottwitz' theorem then says ``w^triangle`` permutes the ``k`` without signs.
The invariant basis is ``e_lam = gamma(lam) k_lam``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .elements import BasisLabel, LieElement
from .rootsys import RootSystem
from .weyl import (
    ElementLike,
    SignedPermutation,
    compose,
    element,
    reduced_word,
)

__all__ = [
    "term",
    "term_table",
    "f_function",
    "f_vector",
    "tau",
    "tits_action",
    "splitting_action",
    "invariant_splitting_action",
    "simple_invariant_action",
    "c_sign",
    "gamma_factor",
    "theta",
    "coroot_sum",
    "height_defect",
    "SignTable",
    "build_sign_table",
]


def term_table(sys: RootSystem) -> np.ndarray:
    """``T[b, g] = <<b, g>>`` as a bit, cached on the root system."""
    T = getattr(sys, "_term_bits", None)
    if T is None:
        P = sys.pair
        T = np.where(P > 0, P % 2, 0)
        zero = P == 0
        # middle case reads the string constant p_{g, b}: b - p g
        T = np.where(zero, sys.p_down.T % 2, T).astype(np.uint8)
        T.setflags(write=False)
        sys._term_bits = T
        sys._term_list = T.tolist()
    return T


def term(sys: RootSystem, beta: int, gamma: int) -> int:
    term_table(sys)
    return sys._term_list[beta][gamma]


def f_vector(sys: RootSystem, w: ElementLike) -> np.ndarray:
    """``F(w, beta)`` mod 2 for every root ``beta``."""
    T = term_table(sys)
    p = element(sys, w).perm
    inv = [k for k in range(sys.npos) if p[k] >= sys.npos]
    if not inv:
        return np.zeros(sys.nroots, dtype=np.uint8)
    return (T[:, inv].sum(axis=1) % 2).astype(np.uint8)


def f_function(sys: RootSystem, w: ElementLike, beta: int) -> int:
    T = term_table(sys)
    p = element(sys, w).perm
    return int(sum(int(T[beta, k]) for k in range(sys.npos) if p[k] >= sys.npos) % 2)


def tau(sys: RootSystem, w: ElementLike) -> tuple[int, ...]:
    return tuple(1 - 2 * int(b) for b in f_vector(sys, w))


def _simple_tits(sys: RootSystem, i: int) -> SignedPermutation:
    term_table(sys)
    signs = tuple(-1 if row[i] else 1 for row in sys._term_list)
    return SignedPermutation(tuple(sys._refl[i]), signs)


def tits_action(sys: RootSystem, w: ElementLike) -> SignedPermutation:
    """Action of the Tits lift ``w^bullet`` on the ``k`` basis, via a reduced word."""
    out = SignedPermutation(tuple(range(sys.nroots)), (1,) * sys.nroots)
    for i in reduced_word(sys, w):
        out = compose(out, _simple_tits(sys, i))
    return out


def splitting_action(sys: RootSystem, w: ElementLike) -> SignedPermutation:
    """Action of ``w^triangle = w^bullet tau_w`` on the ``k`` basis."""
    w = element(sys, w)
    torus = SignedPermutation(tuple(range(sys.nroots)), tau(sys, w))
    return compose(tits_action(sys, w), torus)


def invariant_splitting_action(sys: RootSystem, w: ElementLike) -> SignedPermutation:
    """Same action written on the invariant basis ``e``."""
    k = splitting_action(sys, w)
    g = _gamma(sys)
    signs = tuple(s * g[lam] * g[k.perm[lam]] for lam, s in enumerate(k.signs))
    return SignedPermutation(k.perm, signs)


def simple_invariant_action(sys: RootSystem, i: int) -> SignedPermutation:
    """``s^circ_alpha_i`` on the invariant basis: ``e_lam -> c(s_i, lam) e_{s_i lam}``."""
    table = _c_table(sys)
    return SignedPermutation(tuple(sys._refl[i]), tuple(int(x) for x in table[i]))


def _c_table(sys: RootSystem) -> np.ndarray:
    C = getattr(sys, "_c_signs", None)
    if C is None:
        T = term_table(sys)
        npos = sys.npos
        c = np.array(sys.c, dtype=np.int64)
        # m_{alpha, lam} for lam > 0
        flip = T[:npos, :sys.rank].astype(np.int64)
        odd = (sys.pairing_table[:npos] % 2) * (c[None, :] < 0)
        m = 1 - 2 * ((flip + odd) % 2)
        C = np.concatenate([m, m], axis=0).T.astype(np.int8)  # (rank, nroots)
        C.setflags(write=False)
        sys._c_signs = C
        sys._c_list = C.tolist()
    return C


def c_sign(sys: RootSystem, alpha: int, lam: int) -> int:
    """The sign ``c(s_alpha, lam)`` in ``s^circ_alpha e_lam = c e_{s_alpha lam}``."""
    _c_table(sys)
    return sys._c_list[alpha][lam]


def _gamma(sys: RootSystem) -> tuple[int, ...]:
    g = getattr(sys, "_gamma", None)
    if g is None:
        npos = sys.npos
        g = tuple(1 if k < npos else (1 if (-int(sys.heights[k]) - 1) % 2 == 0 else -1)
                  for k in range(sys.nroots))
        sys._gamma = g
    return g


def gamma_factor(sys: RootSystem, lam: int) -> int:
    """+1 for positive roots, ``(-1)^{ht(-lam) - 1}`` for negative ones."""
    return _gamma(sys)[lam]


def theta(sys: RootSystem, x: LieElement) -> LieElement:
    """Chevalley involution on the invariant basis."""
    out = []
    for lab, v in x:
        if lab.kind == "e":
            out.append((BasisLabel("e", sys.neg(lab.index)), v))
        else:
            out.append((lab, -v))
    return LieElement(out)


def coroot_sum(sys: RootSystem, w: ElementLike, beta: int) -> int:
    """``sum_{g in R_w} <beta, g^vee>``."""
    p = element(sys, w).perm
    row = sys._pair[beta]
    return sum(row[k] for k in range(sys.npos) if p[k] >= sys.npos)


def height_defect(sys: RootSystem, w: ElementLike, beta: int) -> int:
    """``ht(w beta) - ht(beta)``, computed as minus :func:`coroot_sum`."""
    return -coroot_sum(sys, w, beta)


@dataclass
class SignTable:
    """Per-system sign data; ``k_rel_frame`` is filled in by the matrix oracle."""

    sys: RootSystem = field(repr=False)
    term_bits: np.ndarray = field(repr=False)
    c_signs: np.ndarray = field(repr=False)
    gamma: tuple[int, ...] = field(repr=False)
    k_rel_frame: Optional[dict[int, int]] = None

    def tau(self, w: ElementLike) -> tuple[int, ...]:
        return tau(self.sys, w)

    def c(self, alpha: int, lam: int) -> int:
        return int(self.c_signs[alpha, lam])


def build_sign_table(sys: RootSystem) -> SignTable:
    return SignTable(sys, term_table(sys), _c_table(sys), _gamma(sys))
