"""Exact urn-and-tube probabilities: draws, first-full and negative distributions."""

from urntubes.errors import ConditioningError, DomainError, ResourceError
from urntubes.numeric import Rational, approx, rational
from urntubes.multiset import Multiset
from urntubes.dist import Dist, NatDist, condition, flrn, tensor, tensor_pow, validity
from urntubes.draws import (
    DrawMode,
    binomial_pmf,
    hypergeometric_pmf,
    multinomial_pmf,
    negbinomial_pmf,
    polya_pmf,
    sequence_oracle,
)
from urntubes.firstfull import hgff, mnff, plff, points_share
from urntubes.negative import nhg, nmn, npl, single_tube_negative

__version__ = "0.1.0"

__all__ = [
    "ConditioningError",
    "DomainError",
    "ResourceError",
    "Rational",
    "approx",
    "rational",
    "Multiset",
    "Dist",
    "condition",
    "flrn",
    "tensor",
    "tensor_pow",
    "validity",
    "DrawMode",
    "binomial_pmf",
    "hypergeometric_pmf",
    "multinomial_pmf",
    "negbinomial_pmf",
    "polya_pmf",
    "sequence_oracle",
    "hgff",
    "mnff",
    "plff",
    "points_share",
    "NatDist",
    "nhg",
    "nmn",
    "npl",
    "single_tube_negative",
]
