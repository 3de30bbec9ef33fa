"""Basis labels and sparse integer Lie algebra elements."""
from __future__ import annotations

from typing import Iterable, Mapping, NamedTuple


class BasisLabel(NamedTuple):
    kind: str  # "e" (root vector) or "h" (Cartan element h_{alpha_i})
    index: int

    def __repr__(self):
        return f"{self.kind}[{self.index}]"


def E(root: int) -> BasisLabel:
    return BasisLabel("e", root)


def H(i: int) -> BasisLabel:
    return BasisLabel("h", i)


class LieElement:
    """Integer combination of basis labels; zero coefficients are never stored."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[BasisLabel, int] | Iterable[tuple[BasisLabel, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[BasisLabel, int] = {}
        for k, v in items:
            v = acc.get(k, 0) + int(v)
            if v:
                acc[k] = v
            else:
                acc.pop(k, None)
        self.terms = acc

    @classmethod
    def basis(cls, label: BasisLabel, coef: int = 1) -> "LieElement":
        return cls({label: coef})

    def __add__(self, other: "LieElement") -> "LieElement":
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        x = LieElement()
        x.terms = out
        return x

    def __neg__(self) -> "LieElement":
        x = LieElement()
        x.terms = {k: -v for k, v in self.terms.items()}
        return x

    def __sub__(self, other: "LieElement") -> "LieElement":
        return self + (-other)

    def __mul__(self, c: int) -> "LieElement":
        if c == 0:
            return LieElement()
        x = LieElement()
        x.terms = {k: c * v for k, v in self.terms.items()}
        return x

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, LieElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def coefficient(self, label: BasisLabel) -> int:
        return self.terms.get(label, 0)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{v}*{k!r}" for k, v in sorted(self.terms.items()))
