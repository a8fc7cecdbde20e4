"""Negative distributions: after how many draws are all tubes full for the first time.

Multinomial and Polya versions have infinite support and are returned as a
``NatDist`` truncated at a cutoff, with the exact left-over mass recorded as
the residual. The hypergeometric version is always computed in full.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Callable, Hashable, Iterator

from urntubes.dist import Dist, NatDist
from urntubes.draws import (
    DrawMode,
    as_state,
    hypergeometric_prob,
    multinomial_prob,
    polya_prob,
)
from urntubes.errors import DomainError, ResourceError
from urntubes.mmo import Continue, Mmo, Output, emissions
from urntubes.multiset import Multiset, leq, multichoose, multisets_of_size, unit
from urntubes.numeric import as_rational

FILLED = "filled"
DEFAULT_MAX_K = 5000


def _check_tubes(tubes: Multiset, colours) -> None:
    if not isinstance(tubes, Multiset) or not tubes:
        raise DomainError("at least one non-empty tube is needed")
    missing = [c for c in tubes if c not in set(colours)]
    if missing:
        raise DomainError(f"tube colours {missing} never occur in the urn")


def completing_draws(colours, tubes: Multiset, x, k: int,
                     caps: Multiset | None = None) -> Iterator[Multiset]:
    """Draws phi of size k-1 that fill every tube except x, which lacks one ball.

    ``caps`` bounds phi pointwise (the urn, in hypergeometric mode).
    """
    base = tubes - unit(x)
    excess = k - tubes.size
    if excess < 0:
        return
    others = [c for c in colours if c != x]
    if not others:
        if excess == 0:
            yield base
        return
    for extra in multisets_of_size(others, excess):
        phi = base + extra
        if caps is None or leq(phi, caps):
            yield phi


def _entry(colours, tubes: Multiset, k: int, term: Callable[[Multiset, Hashable], Fraction],
           caps: Multiset | None = None) -> Fraction:
    total = Fraction(0)
    for x in tubes:
        for phi in completing_draws(colours, tubes, x, k, caps):
            total += term(phi, x)
    return total


def _mn_term(omega: Dist):
    return lambda phi, x: multinomial_prob(omega, phi) * omega(x)


def _hg_term(urn: Multiset):
    return lambda phi, x: hypergeometric_prob(urn, phi) * Fraction(urn[x] - phi[x], urn.size - phi.size)


def _pl_term(urn: Multiset):
    return lambda phi, x: polya_prob(urn, phi) * Fraction(urn[x] + phi[x], urn.size + phi.size)


def _truncated(mode: DrawMode, urn, tubes: Multiset, colours, term, k_max, tail_eps,
               max_k: int) -> NatDist:
    start = tubes.size
    if (k_max is None) == (tail_eps is None):
        raise DomainError("give exactly one of k_max and tail_eps")
    if k_max is not None:
        if k_max < start:
            raise DomainError(f"k_max {k_max} below the first possible value {start}")
        stop = k_max
    else:
        tail_eps = as_rational(tail_eps)
        if tail_eps <= 0:
            raise DomainError("tail_eps must be positive")
        stop = start
        while negative_tail_bound(mode, urn, tubes, stop) > tail_eps:
            stop += 1
            if stop > max_k:
                raise ResourceError(f"tail bound still above {tail_eps} at k = {max_k}")
    entries = {k: _entry(colours, tubes, k, term) for k in range(start, stop + 1)}
    return NatDist(entries, start, stop)


def nmn(omega: Dist | Multiset, tubes: Multiset, k_max: int | None = None,
        tail_eps: Fraction | None = None, max_k: int = DEFAULT_MAX_K) -> NatDist:
    """Negative multinomial distribution, truncated at k_max or once the
    tail bound drops to tail_eps."""
    omega = as_state(omega)
    colours = omega.support()
    _check_tubes(tubes, colours)
    return _truncated(DrawMode.MULTINOMIAL, omega, tubes, colours, _mn_term(omega),
                      k_max, tail_eps, max_k)


def nhg_support_end(urn: Multiset, tubes: Multiset) -> int:
    # Worst case: every other colour is exhausted before tube x completes.
    return max(tubes[x] + urn.size - urn[x] for x in tubes)


def nhg(urn: Multiset, tubes: Multiset) -> NatDist:
    colours = urn.support()
    _check_tubes(tubes, colours)
    if not leq(tubes, urn):
        raise DomainError(f"urn {urn} cannot fill tubes {tubes}")
    end = nhg_support_end(urn, tubes)
    term = _hg_term(urn)
    entries = {k: _entry(colours, tubes, k, term, caps=urn) for k in range(tubes.size, end + 1)}
    result = NatDist(entries, tubes.size, end)
    if result.residual:
        raise ArithmeticError("negative hypergeometric left residual mass")  # pragma: no cover
    return result


def npl(urn: Multiset, tubes: Multiset, k_max: int | None = None,
        tail_eps: Fraction | None = None, max_k: int = DEFAULT_MAX_K) -> NatDist:
    colours = urn.support()
    _check_tubes(tubes, colours)
    return _truncated(DrawMode.POLYA, urn, tubes, colours, _pl_term(urn), k_max, tail_eps, max_k)


def negative(mode: DrawMode, urn, tubes: Multiset, k_max: int | None = None,
             tail_eps: Fraction | None = None, max_k: int = DEFAULT_MAX_K) -> NatDist:
    mode = DrawMode.parse(mode)
    if mode is DrawMode.MULTINOMIAL:
        return nmn(urn, tubes, k_max, tail_eps, max_k)
    if not isinstance(urn, Multiset):
        raise DomainError(f"{mode.value} mode needs a multiset urn")
    if mode is DrawMode.HYPERGEOMETRIC:
        return nhg(urn, tubes)
    return npl(urn, tubes, k_max, tail_eps, max_k)


def _short_of(mode: DrawMode, urn, x, need: int, k: int) -> Fraction:
    """Probability of fewer than ``need`` balls of colour x among k draws."""
    if mode is DrawMode.MULTINOMIAL:
        r = urn(x)
        return sum((comb(k, j) * r**j * (1 - r) ** (k - j) for j in range(min(need, k + 1))),
                   Fraction(0))
    own, rest = urn[x], urn.size - urn[x]
    if rest == 0:
        return Fraction(1 if k < need else 0)
    pair = Multiset({0: own, 1: rest})
    return sum((polya_prob(pair, Multiset({0: j, 1: k - j})) for j in range(min(need, k + 1))),
               Fraction(0))


def negative_tail_bound(mode: DrawMode, urn, tubes: Multiset, k: int) -> Fraction:
    """Exact upper bound on the probability that the tubes are not all full
    after k draws (union bound over the colours), clipped to 1."""
    mode = DrawMode.parse(mode)
    if mode is DrawMode.HYPERGEOMETRIC:
        raise DomainError("hypergeometric negatives have finite support; no tail bound needed")
    if mode is DrawMode.MULTINOMIAL:
        urn = as_state(urn)
    if k < 0:
        raise DomainError("k must be a natural number")
    bound = sum((_short_of(mode, urn, x, n, k) for x, n in tubes.items()), Fraction(0))
    return min(bound, Fraction(1))


def _neg_mn_kernel(omega: Dist) -> Mmo:
    def kernel(tubes: Multiset) -> Dist:
        steps = []
        for x, p in omega.items():
            if tubes[x] == 0:
                steps.append((Continue(tubes), p))
            elif tubes.size == 1:
                steps.append((Output(FILLED), p))
            else:
                steps.append((Continue(tubes - unit(x)), p))
        return Dist(steps)

    return kernel


def _neg_urn_kernel(delta: int) -> Mmo:
    def kernel(position: tuple[Multiset, Multiset]) -> Dist:
        urn, tubes = position
        steps = []
        for x, n in urn.items():
            p = Fraction(n, urn.size)
            nxt_urn = urn - unit(x) if delta < 0 else urn + unit(x)
            if tubes[x] == 0:
                steps.append((Continue((nxt_urn, tubes)), p))
            elif tubes.size == 1:
                steps.append((Output(FILLED), p))
            else:
                steps.append((Continue((nxt_urn, tubes - unit(x))), p))
        return Dist(steps)

    return kernel


def negative_mmo(mode: DrawMode, urn, tubes: Multiset) -> tuple[Mmo, Hashable]:
    """Automaton for the negative distribution and its start position.

    The draw count is not part of the position; the step at which an output
    appears is the value of the negative distribution.
    """
    mode = DrawMode.parse(mode)
    if mode is DrawMode.MULTINOMIAL:
        omega = as_state(urn)
        _check_tubes(tubes, omega.support())
        return _neg_mn_kernel(omega), tubes
    if not isinstance(urn, Multiset):
        raise DomainError(f"{mode.value} mode needs a multiset urn")
    _check_tubes(tubes, urn.support())
    if mode is DrawMode.HYPERGEOMETRIC:
        if not leq(tubes, urn):
            raise DomainError(f"urn {urn} cannot fill tubes {tubes}")
        return _neg_urn_kernel(-1), (urn, tubes)
    return _neg_urn_kernel(+1), (urn, tubes)


def negative_via_mmo(mode: DrawMode, urn, tubes: Multiset, k_max: int | None = None,
                     on_step: Callable[[int, dict, dict], None] | None = None) -> NatDist:
    """Negative distribution read off the automaton, step by step.

    Hypergeometric runs go to absorption; the other modes stop after k_max.
    """
    mode = DrawMode.parse(mode)
    kernel, start = negative_mmo(mode, urn, tubes)
    if mode is not DrawMode.HYPERGEOMETRIC and k_max is None:
        raise DomainError("k_max is needed for infinite-support modes")
    if k_max is not None and k_max < tubes.size:
        raise DomainError(f"k_max {k_max} below the first possible value {tubes.size}")
    entries: dict[int, Fraction] = {}
    last = tubes.size
    running_mass = Fraction(1)
    for n, emitted, running in emissions(kernel, start):
        if on_step is not None:
            on_step(n, emitted, running)
        if emitted:
            entries[n] = emitted[FILLED]
        last = n
        running_mass = sum(running.values(), Fraction(0))
        if k_max is not None and n >= k_max:
            break
    if k_max is None:
        k_max = max(last, tubes.size)
    return NatDist(entries, tubes.size, k_max, running_mass)


def _bivariate_multichoose(n: int, m: int) -> int:
    # Multichoose extended to an empty colour: no non-empty draw is possible.
    if n == 0:
        return 1 if m == 0 else 0
    return multichoose(n, m)


def single_tube_negative(mode: DrawMode, urn, y: Hashable, m: int, k: int) -> Fraction:
    """Closed form for one tube of length m on colour y, at m + k draws."""
    mode = DrawMode.parse(mode)
    if m < 1 or k < 0:
        raise DomainError("need m >= 1 and k >= 0")
    weight = Fraction(m, m + k)
    if mode is DrawMode.MULTINOMIAL:
        s = as_state(urn)(y)
        if not 0 < s < 1:
            raise DomainError(f"probability of {y!r} must lie strictly between 0 and 1")
        return weight * comb(m + k, m) * s**m * (1 - s) ** k
    if not isinstance(urn, Multiset):
        raise DomainError(f"{mode.value} mode needs a multiset urn")
    own, total = urn[y], urn.size
    if mode is DrawMode.HYPERGEOMETRIC:
        if own < m:
            raise DomainError(f"urn holds only {own} balls of colour {y!r}")
        if m + k > total:
            return Fraction(0)
        return weight * Fraction(comb(own, m) * comb(total - own, k), comb(total, m + k))
    if own < 1:
        raise DomainError(f"urn holds no ball of colour {y!r}")
    return weight * Fraction(multichoose(own, m) * _bivariate_multichoose(total - own, k),
                             multichoose(total, m + k))
