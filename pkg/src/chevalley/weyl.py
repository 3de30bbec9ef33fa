"""Weyl group elements acting on the root set, inversion sets, signed permutations."""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .rootsys import RootSystem

__all__ = [
    "WeylElement",
    "SignedPermutation",
    "apply_word",
    "element",
    "inversion_set",
    "reduced_word",
    "compose",
    "identity_signed",
    "enumerate_elements",
    "random_element",
]


@dataclass(frozen=True)
class WeylElement:
    """A Weyl group element, identified by its permutation of the root indices."""

    perm: tuple[int, ...]

    def __call__(self, lam: int) -> int:
        return self.perm[lam]

    def __matmul__(self, other: "WeylElement") -> "WeylElement":
        p = self.perm
        return WeylElement(tuple(p[k] for k in other.perm))

    def inverse(self) -> "WeylElement":
        inv = [0] * len(self.perm)
        for k, v in enumerate(self.perm):
            inv[v] = k
        return WeylElement(tuple(inv))

    def array(self) -> np.ndarray:
        return np.asarray(self.perm, dtype=np.int64)

    @classmethod
    def identity(cls, sys: RootSystem) -> "WeylElement":
        return cls(tuple(range(sys.nroots)))


Word = Sequence[int]
ElementLike = Union[WeylElement, Sequence[int]]


def _check_word(sys: RootSystem, word: Word) -> None:
    for i in word:
        if not 0 <= i < sys.rank:
            raise ValueError(f"letter {i} out of range for rank {sys.rank}")


def element(sys: RootSystem, w: ElementLike) -> WeylElement:
    """Coerce a word (or an element) into a :class:`WeylElement`."""
    if isinstance(w, WeylElement):
        return w
    _check_word(sys, w)
    p = np.arange(sys.nroots)
    for i in reversed(w):
        p = sys.reflection_table[i][p]
    return WeylElement(tuple(p.tolist()))


def apply_word(sys: RootSystem, w: Word, lam: int) -> int:
    """``s_{w[0]}(s_{w[1]}(... s_{w[-1]}(lam)))``."""
    _check_word(sys, w)
    for i in reversed(w):
        lam = sys._refl[i][lam]
    return lam


def inversion_set(sys: RootSystem, w: ElementLike) -> frozenset[int]:
    """Positive roots sent negative by ``w``."""
    p = element(sys, w).perm
    n = sys.npos
    return frozenset(k for k in range(n) if p[k] >= n)


def length(sys: RootSystem, w: ElementLike) -> int:
    p = element(sys, w).perm
    n = sys.npos
    return sum(1 for k in range(n) if p[k] >= n)


def reduced_word(sys: RootSystem, w: ElementLike) -> tuple[int, ...]:
    """A reduced word for ``w``, stripping the smallest right descent first."""
    p = list(element(sys, w).perm)
    n = sys.npos
    letters = []
    while True:
        for i in range(sys.rank):
            if p[i] >= n:
                break
        else:
            break
        letters.append(i)
        refl = sys._refl[i]
        p = [p[refl[k]] for k in range(len(p))]
    return tuple(reversed(letters))


def enumerate_elements(sys: RootSystem, limit: int = 100_000) -> Optional[list[WeylElement]]:
    """All of W by breadth-first search, or None once ``limit`` is exceeded."""
    start = WeylElement.identity(sys)
    seen = {start.perm}
    out = [start]
    frontier = [start]
    gens = [element(sys, (i,)) for i in range(sys.rank)]
    while frontier:
        nxt = []
        for w in frontier:
            for s in gens:
                x = s @ w
                if x.perm not in seen:
                    seen.add(x.perm)
                    out.append(x)
                    nxt.append(x)
                    if len(out) > limit:
                        return None
        frontier = nxt
    return out


def random_element(sys: RootSystem, rng: random.Random, max_len: Optional[int] = None) -> WeylElement:
    n = max_len if max_len is not None else 2 * sys.npos
    word = [rng.randrange(sys.rank) for _ in range(rng.randint(0, n))]
    return element(sys, word)


# -- signed permutations ------------------------------------------------------


@dataclass(frozen=True)
class SignedPermutation:
    """Action ``x_lam -> signs[lam] * x_{perm[lam]}`` on a root-vector basis."""

    perm: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        if len(self.perm) != len(self.signs):
            raise ValueError("perm and signs differ in length")

    def __call__(self, lam: int) -> tuple[int, int]:
        return self.signs[lam], self.perm[lam]

    @property
    def size(self) -> int:
        return len(self.perm)


def identity_signed(sys: RootSystem) -> SignedPermutation:
    return SignedPermutation(tuple(range(sys.nroots)), (1,) * sys.nroots)


def compose(a: SignedPermutation, b: SignedPermutation) -> SignedPermutation:
    """``a o b``: apply ``b`` first."""
    if a.size != b.size:
        raise ValueError("signed permutations act on different root systems")
    ap, asg = a.perm, a.signs
    perm = tuple(ap[k] for k in b.perm)
    signs = tuple(asg[k] * s for k, s in zip(b.perm, b.signs))
    return SignedPermutation(perm, signs)
