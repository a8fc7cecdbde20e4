"""First-full distributions: which tube fills first, for each drawing mode."""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Callable, Iterator

from urntubes.dist import Dist
from urntubes.draws import (
    DrawMode,
    as_state,
    hypergeometric_prob,
    multinomial_prob,
    polya_prob,
)
from urntubes.errors import DomainError
from urntubes.multiset import Multiset, leq
from urntubes.numeric import as_rational


def check_tubes(tubes: Multiset) -> Multiset:
    if not isinstance(tubes, Multiset):
        raise DomainError("tubes must be a multiset")
    if not tubes:
        raise DomainError("at least one tube of length >= 1 is needed")
    return tubes


def _same_support(tubes: Multiset, colours, what: str) -> None:
    if set(colours) != set(tubes.support()):
        raise DomainError(
            f"{what} colours {sorted(colours)} differ from tube colours {sorted(tubes.support())}"
        )


def last_ball_draws(tubes: Multiset, x) -> Iterator[Multiset]:
    """Draws phi fully below the tubes that leave exactly one ball missing in tube x."""
    others = [c for c in tubes if c != x]
    ranges = [range(tubes[c]) for c in others]
    for counts in product(*ranges):
        yield Multiset([(x, tubes[x] - 1), *zip(others, counts)])


def _firstfull(tubes: Multiset, term: Callable[[Multiset, object], Fraction]) -> Dist:
    return Dist(
        (x, sum((term(phi, x) for phi in last_ball_draws(tubes, x)), Fraction(0))) for x in tubes
    )


def mnff(omega: Dist | Multiset, tubes: Multiset) -> Dist:
    omega = as_state(omega)
    check_tubes(tubes)
    _same_support(tubes, omega.support(), "distribution")
    return _firstfull(tubes, lambda phi, x: multinomial_prob(omega, phi) * omega(x))


def hgff(urn: Multiset, tubes: Multiset) -> Dist:
    check_tubes(tubes)
    if not leq(tubes, urn):
        raise DomainError(f"urn {urn} cannot fill tubes {tubes}")
    _same_support(tubes, urn.support(), "urn")

    def term(phi: Multiset, x) -> Fraction:
        return hypergeometric_prob(urn, phi) * Fraction(urn[x] - phi[x], urn.size - phi.size)

    return _firstfull(tubes, term)


def plff(urn: Multiset, tubes: Multiset) -> Dist:
    check_tubes(tubes)
    _same_support(tubes, urn.support(), "urn")

    def term(phi: Multiset, x) -> Fraction:
        return polya_prob(urn, phi) * Fraction(urn[x] + phi[x], urn.size + phi.size)

    return _firstfull(tubes, term)


def firstfull(mode: DrawMode, urn: Dist | Multiset, tubes: Multiset) -> Dist:
    mode = DrawMode.parse(mode)
    if mode is DrawMode.MULTINOMIAL:
        return mnff(urn, tubes)
    if not isinstance(urn, Multiset):
        raise DomainError(f"{mode.value} first-full needs a multiset urn")
    if mode is DrawMode.HYPERGEOMETRIC:
        return hgff(urn, tubes)
    return plff(urn, tubes)


def points_share(target: int, wins_a: int, wins_b: int, p_a: Fraction,
                 stake: Fraction = Fraction(1)) -> tuple[Dist, Fraction]:
    """Fair division of an interrupted race to ``target`` wins.

    Returns the chances of A and B to win if play continued, and A's share
    of the stake.
    """
    p_a = as_rational(p_a)
    stake = as_rational(stake)
    if not 0 < p_a < 1:
        raise DomainError("win probability must lie strictly between 0 and 1")
    if wins_a < 0 or wins_b < 0:
        raise DomainError("win counts must be natural numbers")
    if wins_a >= target or wins_b >= target:
        raise DomainError("a player has already reached the target")
    rho = mnff(Dist({"A": p_a, "B": 1 - p_a}),
               Multiset({"A": target - wins_a, "B": target - wins_b}))
    return rho, rho("A") * stake
