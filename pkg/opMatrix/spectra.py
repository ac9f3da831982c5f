from enum import Enum

from .regions import union_of


class SpectrumKind(Enum):
    L = 'L'
    R = 'R'
    FULL = 'Full'
    LE = 'LE'
    RE = 'RE'
    E = 'E'
    LW = 'LW'
    RW = 'RW'
    W = 'W'

    @classmethod
    def parse(cls, text):
        for kind in cls:
            if kind.value.lower() == text.lower():
                return kind
        raise ValueError(f"unknown spectrum kind {text!r}")


def selects(kind, data):
    """True when λ with Fredholm data ``data`` lies in the spectrum of that kind."""
    if kind is SpectrumKind.LE:
        return not data.left_fredholm
    if kind is SpectrumKind.RE:
        return not data.right_fredholm
    if kind is SpectrumKind.E:
        return not data.fredholm
    if kind is SpectrumKind.LW:
        return not data.left_weyl
    if kind is SpectrumKind.RW:
        return not data.right_weyl
    if kind is SpectrumKind.W:
        return not (data.left_weyl and data.right_weyl)
    if kind is SpectrumKind.L:
        return not data.left_invertible
    if kind is SpectrumKind.R:
        return not data.right_invertible
    if kind is SpectrumKind.FULL:
        return not (data.left_invertible and data.right_invertible)
    raise ValueError(f"unknown spectrum kind {kind!r}")


def spectrum(model, kind):
    """The spectrum of the given kind as a region."""
    return union_of(region for region, data in model.profile().parts if selects(kind, data))
