"""Multinomial, hypergeometric and Polya draw distributions on multisets."""

from __future__ import annotations

import enum
from fractions import Fraction
from itertools import product
from math import comb, prod

from urntubes.dist import Dist, NatDist, flrn
from urntubes.errors import DomainError, ResourceError
from urntubes.multiset import (
    EMPTY,
    Multiset,
    acc,
    coefm,
    mbinom,
    mmultichoose,
    multichoose,
    multisets_of_size,
    submultisets_of_size,
)
from urntubes.numeric import as_rational

SEQUENCE_GUARD = 10**7


class DrawMode(enum.Enum):
    MULTINOMIAL = "multinomial"
    HYPERGEOMETRIC = "hypergeometric"
    POLYA = "polya"

    @classmethod
    def parse(cls, text: "str | DrawMode") -> "DrawMode":
        if isinstance(text, DrawMode):
            return text
        aliases = {"mn": "multinomial", "0": "multinomial", "hg": "hypergeometric",
                   "-1": "hypergeometric", "pl": "polya", "+1": "polya", "pólya": "polya"}
        key = text.strip().lower()
        try:
            return cls(aliases.get(key, key))
        except ValueError:
            raise DomainError(f"unknown draw mode {text!r}") from None


def as_state(urn: Dist | Multiset) -> Dist:
    """Multinomial urns are distributions; a multiset urn is normalised first."""
    if isinstance(urn, Multiset):
        return flrn(urn)
    return urn


def multinomial_prob(omega: Dist, phi: Multiset) -> Fraction:
    """Point lookup of the multinomial pmf at draw phi (of size ||phi||)."""
    return coefm(phi) * prod((omega(x) ** n for x, n in phi.items()), start=Fraction(1))


def hypergeometric_prob(urn: Multiset, phi: Multiset) -> Fraction:
    return Fraction(mbinom(urn, phi), comb(urn.size, phi.size))


def polya_prob(urn: Multiset, phi: Multiset) -> Fraction:
    return Fraction(mmultichoose(urn, phi), multichoose(urn.size, phi.size))


def multinomial_pmf(omega: Dist | Multiset, k: int) -> Dist:
    omega = as_state(omega)
    return Dist((phi, multinomial_prob(omega, phi)) for phi in multisets_of_size(omega.support(), k))


def hypergeometric_pmf(urn: Multiset, k: int) -> Dist:
    if k > urn.size:
        raise DomainError(f"cannot draw {k} balls from an urn of {urn.size}")
    return Dist((phi, hypergeometric_prob(urn, phi)) for phi in submultisets_of_size(urn, k))


def polya_pmf(urn: Multiset, k: int) -> Dist:
    if not urn:
        raise DomainError("Polya draws need a non-empty urn")
    return Dist((phi, polya_prob(urn, phi)) for phi in multisets_of_size(urn.support(), k))


def draw_pmf(mode: DrawMode, urn: Dist | Multiset, k: int) -> Dist:
    mode = DrawMode.parse(mode)
    if mode is DrawMode.MULTINOMIAL:
        return multinomial_pmf(urn, k)
    if not isinstance(urn, Multiset):
        raise DomainError(f"{mode.value} draws need a multiset urn")
    if mode is DrawMode.HYPERGEOMETRIC:
        return hypergeometric_pmf(urn, k)
    return polya_pmf(urn, k)


def _check_unit(r: Fraction, open_: bool = False) -> Fraction:
    r = as_rational(r)
    if open_ and not 0 < r < 1:
        raise DomainError(f"{r} is not strictly between 0 and 1")
    if not 0 <= r <= 1:
        raise DomainError(f"{r} is not a probability")
    return r


def binomial_pmf(k: int, r: Fraction) -> Dist:
    r = _check_unit(r)
    return Dist((i, comb(k, i) * r**i * (1 - r) ** (k - i)) for i in range(k + 1))


def negbinomial_pmf(m: int, s: Fraction, k_max: int) -> NatDist:
    """Waiting time for the m-th success, truncated after k_max trials."""
    s = _check_unit(s)
    if m < 1:
        raise DomainError("negative binomial needs m >= 1")
    if k_max < m:
        raise DomainError(f"k_max {k_max} below the first possible value {m}")
    if s == 0:
        raise DomainError("success probability 0 never terminates")
    if s == 1:
        return NatDist({m: Fraction(1)}, m, k_max)
    head = s**m
    entries = {m + i: multichoose(m, i) * head * (1 - s) ** i for i in range(k_max - m + 1)}
    return NatDist(entries, m, k_max)


def _step_prob(mode: DrawMode, urn, drawn: Multiset, x) -> Fraction:
    if mode is DrawMode.MULTINOMIAL:
        return urn(x)
    if mode is DrawMode.HYPERGEOMETRIC:
        left = urn.size - drawn.size
        return Fraction(urn[x] - drawn[x], left) if left else Fraction(0)
    return Fraction(urn[x] + drawn[x], urn.size + drawn.size)


def sequence_oracle(mode: DrawMode, urn: Dist | Multiset, k: int) -> Dist:
    """Draw distribution obtained by summing over every ordered draw sequence."""
    mode = DrawMode.parse(mode)
    if mode is DrawMode.MULTINOMIAL:
        urn = as_state(urn)
    elif not isinstance(urn, Multiset):
        raise DomainError(f"{mode.value} draws need a multiset urn")
    if mode is DrawMode.HYPERGEOMETRIC and k > urn.size:
        raise DomainError(f"cannot draw {k} balls from an urn of {urn.size}")
    colours = urn.support()
    if len(colours) ** k > SEQUENCE_GUARD:
        raise ResourceError(f"{len(colours)}^{k} sequences exceed the enumeration guard")
    out: dict[Multiset, Fraction] = {}
    for seq in product(colours, repeat=k):
        p = Fraction(1)
        drawn = EMPTY
        for x in seq:
            p *= _step_prob(mode, urn, drawn, x)
            if not p:
                break
            drawn = drawn + Multiset({x: 1})
        if p:
            phi = acc(seq)
            out[phi] = out.get(phi, 0) + p
    return Dist(out)
