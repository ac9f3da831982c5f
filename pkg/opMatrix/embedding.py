"""Space relations between kernels and cokernels, decided on dimensions.

In the catalog every space is a Hilbert space known through its dimension,
so "X embeds in Y" and its variants reduce to comparisons in N ∪ {∞}.
"""
from enum import Enum

from .counts import SpaceModel
from .regions import union_of


class RelationMode(Enum):
    EMBEDS = 'Embeds'
    ESSENTIALLY_EMBEDS = 'EssentiallyEmbeds'
    STRONGLY_EMBEDS = 'StronglyEmbeds'
    UFDS = 'Ufds'


def space_relation(mode, x, y):
    """Decide the relation between two SpaceModels."""
    if isinstance(x, SpaceModel):
        x = x.dim
    if isinstance(y, SpaceModel):
        y = y.dim
    if mode is RelationMode.EMBEDS:
        return x <= y
    if mode is RelationMode.ESSENTIALLY_EMBEDS:
        return x < y and y.is_infinite
    if mode is RelationMode.STRONGLY_EMBEDS:
        # a left invertible map from a finite space into an infinite one leaves infinite codimension
        return x <= y and (y.is_finite or x.is_infinite)
    if mode is RelationMode.UFDS:
        return x.is_finite == y.is_finite
    raise ValueError(f"unknown relation {mode!r}")


def complements_condition(model, lam):
    """Kernel and range closure of model - λ are complemented; in the catalog this means a closed range."""
    return model.data_at(lam).range_closed


def is_regular(model, lam):
    """model - λ has an inner inverse; in the catalog this means a closed range."""
    return model.data_at(lam).range_closed


def complements_region(model):
    return union_of(region for region, data in model.profile().parts if data.range_closed)


def regular_region(model):
    return complements_region(model)
