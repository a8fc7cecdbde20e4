"""Conditioning constructions and checkers for the bivariate counting identities."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from urntubes import numeric
from urntubes.dist import Dist, Predicate, condition, tensor_all, weights_product
from urntubes.draws import (
    DrawMode,
    binomial_pmf,
    hypergeometric_pmf,
    negbinomial_pmf,
    polya_pmf,
)
from urntubes.errors import DomainError
from urntubes.multiset import Multiset, multichoose
from urntubes.negative import negative_tail_bound
from urntubes.numeric import as_rational


def sum_predicate(k: int, length: int) -> Predicate:
    """Indicator of tuples of ``length`` naturals adding up to k."""
    if length < 1:
        raise DomainError("sum predicate needs at least one coordinate")

    def pred(ns: tuple[int, ...]) -> Fraction:
        if len(ns) != length:
            raise DomainError(f"expected a {length}-tuple, got {ns!r}")
        return Fraction(1 if sum(ns) == k else 0)

    return pred


def indexed_urn(ks: Sequence[int]) -> Multiset:
    """The multiset k_1|1> + ... + k_l|l>."""
    return Multiset((i, k) for i, k in enumerate(ks, start=1))


def as_tuple(phi: Multiset, length: int) -> tuple[int, ...]:
    return tuple(phi[i] for i in range(1, length + 1))


def _interior(r) -> Fraction:
    r = as_rational(r)
    if not 0 < r < 1:
        raise DomainError("r must lie strictly between 0 and 1")
    return r


def hypergeometric_via_conditioning(ks: Sequence[int], r: Fraction, k: int) -> Dist:
    """Parallel binomials conditioned on their sum being k."""
    r = _interior(r)
    if any(x < 0 for x in ks) or not ks:
        raise DomainError("ks must be a non-empty list of naturals")
    if k > sum(ks):
        raise DomainError("K exceeds the total number of trials")
    joint = tensor_all(binomial_pmf(x, r) for x in ks)
    return condition(joint, sum_predicate(k, len(ks)))


def hypergeometric_as_tuples(ks: Sequence[int], k: int) -> Dist:
    return hypergeometric_pmf(indexed_urn(ks), k).map(lambda phi: as_tuple(phi, len(ks)))


def polya_via_conditioning(ks: Sequence[int], r: Fraction, k: int,
                           k_max: int | None = None) -> Dist:
    """Parallel negative binomials conditioned on their sum being k.

    Each factor is truncated at ``k_max`` (default k); the sum predicate is
    zero beyond k, so nothing that matters is cut off.
    """
    r = _interior(r)
    if not ks or any(x < 1 for x in ks):
        raise DomainError("ks must be a non-empty list of positive naturals")
    if k < sum(ks):
        raise DomainError("K must be at least the sum of ks")
    k_max = k if k_max is None else k_max
    if k_max < k:
        raise DomainError("per-factor truncation must reach K")
    tables = [negbinomial_pmf(x, r, k_max).entries for x in ks]
    return condition(weights_product(tables), sum_predicate(k, len(ks)))


def polya_as_tuples(ks: Sequence[int], k: int) -> Dist:
    """Polya draws of size k - sum(ks), shifted by ks, as tuples."""
    urn = indexed_urn(ks)
    shift = tuple(ks)
    return polya_pmf(urn, k - sum(ks)).map(
        lambda phi: tuple(a + b for a, b in zip(shift, as_tuple(phi, len(ks))))
    )


@dataclass
class IdentityReport:
    identity: str
    params: dict
    lhs: Fraction
    rhs: Fraction
    holds: bool
    note: str = ""
    partials: list = field(default_factory=list, repr=False)

    def to_json(self) -> dict:
        return {
            "identity": self.identity,
            "params": {k: (numeric.fmt(v) if isinstance(v, Fraction) else v)
                       for k, v in self.params.items()},
            "lhs": numeric.to_json(self.lhs),
            "rhs": numeric.to_json(self.rhs),
            "holds": self.holds,
            "note": self.note,
        }


def _mc(n: int, m: int) -> int:
    return multichoose(n, m)


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise DomainError(msg)


def _nm(params: dict) -> tuple[int, int]:
    n, m = params["n"], params["m"]
    _need(n > 0 and m > 0, "need n > 0 and m > 0")
    return n, m


def _rs(params: dict, open_: bool) -> tuple[Fraction, Fraction]:
    r, s = as_rational(params["r"]), as_rational(params["s"])
    _need(r + s == 1, "need r + s = 1")
    if open_:
        _need(0 < r < 1 and 0 < s < 1, "need r, s in (0,1)")
    else:
        _need(0 <= r <= 1 and 0 <= s <= 1, "need r, s in [0,1]")
    return r, s


def check_firstfull_identity(item: int, params: dict) -> IdentityReport:
    """Both sides of the bivariate first-full identities, evaluated exactly."""
    n, m = _nm(params)
    if item == 1:
        r, s = _rs(params, open_=False)
        lhs = (r**n * sum((_mc(n, j) * s**j for j in range(m)), Fraction(0))
               + s**m * sum((_mc(m, i) * r**i for i in range(n)), Fraction(0)))
        rhs = Fraction(1)
        name = "firstfull-multinomial"
    elif item == 2:
        N, M = params["N"], params["M"]
        _need(N >= n and M >= m, "need N >= n and M >= m")
        lhs = Fraction(sum(_mc(n, j) * comb(N - n + M - j, N - n) for j in range(m))
                       + sum(_mc(m, i) * comb(N - i + M - m, M - m) for i in range(n)))
        rhs = Fraction(comb(N + M, N))
        name = "firstfull-hypergeometric"
    elif item == 3:
        N, M = params["N"], params["M"]
        _need(N > 0 and M > 0, "need N > 0 and M > 0")
        lhs = (n * _mc(N, n) * sum((Fraction(_mc(M, j), _mc(n + j, N + M)) for j in range(m)),
                                   Fraction(0))
               + m * _mc(M, m) * sum((Fraction(_mc(N, i), _mc(i + m, N + M)) for i in range(n)),
                                     Fraction(0)))
        rhs = Fraction(N + M)
        name = "firstfull-polya"
    else:
        raise DomainError(f"no first-full identity item {item}")
    return IdentityReport(name, dict(params), lhs, rhs, lhs == rhs)


def _truncated_report(name: str, params: dict, terms, rhs: Fraction, truncation: int,
                      tolerance: Fraction) -> IdentityReport:
    partials = []
    acc = Fraction(0)
    monotone = True
    for t in terms:
        if t < 0:
            monotone = False
        acc += t
        partials.append(acc)
    bounded = acc <= rhs
    gap = rhs - acc
    close = gap <= tolerance
    note = (f"truncation={truncation} gap={numeric.fmt(gap)} (~{numeric.approx(gap):.3g}) "
            f"monotone={monotone} bounded={bounded} tolerance={numeric.fmt(tolerance)}")
    rep = IdentityReport(name, dict(params), acc, rhs, monotone and bounded and close, note)
    rep.partials = partials
    return rep


def check_negative_identity(item: int, params: dict, truncation: int = 200,
                            tolerance: Fraction | None = None) -> IdentityReport:
    """The bivariate negative identities.

    Item 2 is a finite sum and is checked exactly. Items 1 and 3 are series;
    their first ``truncation`` terms are summed and the report holds when the
    partial sums increase, stay below the right-hand side, and end within
    ``tolerance`` of it. Without a tolerance the gap must respect the exact
    tail bound of the negative distribution whose normalisation the series
    restates.
    """
    n, m = _nm(params)
    if item == 2:
        N, M = params["N"], params["M"]
        _need(N >= n and M >= m, "need N >= n and M >= m")
        lhs = Fraction(sum(_mc(n, m + j) * comb(N - n + M - m - j, N - n) for j in range(M - m + 1))
                       + sum(_mc(m, n + i) * comb(N - n - i + M - m, M - m)
                             for i in range(N - n + 1)))
        rhs = Fraction(comb(N + M, N))
        return IdentityReport("negative-hypergeometric", dict(params), lhs, rhs, lhs == rhs)
    if truncation < 1:
        raise DomainError("truncation must be positive")
    if item == 1:
        r, s = _rs(params, open_=True)
        terms = (_mc(n, m + i) * s**i + _mc(m, n + i) * r**i for i in range(truncation))
        rhs = 1 / (r**n * s**m)
        name = "negative-multinomial"
        if tolerance is None:
            tail = negative_tail_bound(DrawMode.MULTINOMIAL, Dist({"a": r, "b": s}),
                                       Multiset({"a": n, "b": m}), n + m + truncation - 1)
            tolerance = tail * rhs
    elif item == 3:
        N, M = params["N"], params["M"]
        _need(N > 0 and M > 0, "need N > 0 and M > 0")
        a, b = n * _mc(N, n), m * _mc(M, m)
        terms = (a * Fraction(_mc(M, m + i), _mc(n + m + i, N + M))
                 + b * Fraction(_mc(N, n + i), _mc(n + i + m, N + M)) for i in range(truncation))
        rhs = Fraction(N + M)
        name = "negative-polya"
        if tolerance is None:
            tail = negative_tail_bound(DrawMode.POLYA, Multiset({"a": N, "b": M}),
                                       Multiset({"a": n, "b": m}), n + m + truncation - 1)
            tolerance = tail * rhs
    else:
        raise DomainError(f"no negative identity item {item}")
    return _truncated_report(name, params, terms, rhs, truncation, as_rational(tolerance))
