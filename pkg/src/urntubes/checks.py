"""Randomised self-checks behind ``urntubes check``.

Each suite draws ``trials`` random instances from a seeded generator and
returns one ``IdentityReport`` per comparison. Comparisons of two
distributions report the total absolute difference as lhs and 0 as rhs.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import comb

from urntubes.analysis import (
    IdentityReport,
    check_firstfull_identity,
    check_negative_identity,
    hypergeometric_as_tuples,
    hypergeometric_via_conditioning,
    polya_as_tuples,
    polya_via_conditioning,
)
from urntubes.dist import Dist, flrn
from urntubes.draws import DrawMode
from urntubes.firstfull import firstfull
from urntubes.mmo import firstfull_via_mmo
from urntubes.multiset import (
    Multiset,
    mbinom,
    mmultichoose,
    multichoose,
    multisets_of_size,
    submultisets_of_size,
)
from urntubes.negative import negative, negative_via_mmo

SUITES = ("vandermonde", "firstfull", "negative", "conditioning", "corollaries")
COLOURS = "abcd"
RATES = (Fraction(1, 3), Fraction(1, 2), Fraction(3, 5))


def distance(p: Dist | dict, q: Dist | dict) -> Fraction:
    p, q = dict(p.items()), dict(q.items())
    return sum((abs(p.get(x, 0) - q.get(x, 0)) for x in set(p) | set(q)), Fraction(0))


def _compare(name: str, params: dict, p, q, extra: Fraction = Fraction(0)) -> IdentityReport:
    gap = distance(p, q) + extra
    return IdentityReport(name, params, gap, Fraction(0), gap == 0)


def _random_multiset(rng: random.Random, colours: str, lo: int, hi: int) -> Multiset:
    return Multiset((c, rng.randint(lo, hi)) for c in colours)


def vandermonde(rng: random.Random) -> list[IdentityReport]:
    colours = COLOURS[: rng.randint(1, 4)]
    while True:
        psi = _random_multiset(rng, colours, 0, 6)
        if 0 < psi.size <= 12:
            break
    k = rng.randint(0, psi.size)
    lhs = Fraction(sum(mbinom(psi, phi) for phi in submultisets_of_size(psi, k)))
    out = [IdentityReport("multiset-vandermonde", {"psi": str(psi), "K": k},
                          lhs, Fraction(comb(psi.size, k)), lhs == comb(psi.size, k))]
    k = rng.randint(0, 8)
    lhs = Fraction(sum(mmultichoose(psi, phi) for phi in multisets_of_size(psi.support(), k)))
    rhs = Fraction(multichoose(psi.size, k))
    out.append(IdentityReport("multichoose-vandermonde", {"psi": str(psi), "K": k},
                              lhs, rhs, lhs == rhs))
    return out


def _random_instance(rng: random.Random, mode: DrawMode):
    colours = COLOURS[: rng.randint(1, 4)]
    tubes = _random_multiset(rng, colours, 1, 4)
    if mode is DrawMode.HYPERGEOMETRIC:
        urn = Multiset((c, rng.randint(tubes[c], 8)) for c in colours)
    else:
        urn = _random_multiset(rng, colours, 1, 8)
    if mode is DrawMode.MULTINOMIAL:
        urn = flrn(urn)
    return urn, tubes


def _label(urn) -> str:
    if isinstance(urn, Dist):
        return " + ".join(f"{p} {x}" for x, p in urn.items())
    return str(urn)


def firstfull_equivalence(rng: random.Random) -> list[IdentityReport]:
    out = []
    for mode in DrawMode:
        urn, tubes = _random_instance(rng, mode)
        run = firstfull_via_mmo(mode, urn, tubes)
        params = {"mode": mode.value, "urn": _label(urn), "tubes": str(tubes)}
        out.append(_compare("firstfull-mmo", params, firstfull(mode, urn, tubes), run.outputs,
                            run.residual))
    return out


def negative_equivalence(rng: random.Random) -> list[IdentityReport]:
    out = []
    for mode in DrawMode:
        urn, tubes = _random_instance(rng, mode)
        # Drop the tube of colour b so that colours without a tube get exercised.
        tubes = Multiset((c, n) for c, n in tubes.items() if c != "b" or len(tubes) == 1)
        k_max = None if mode is DrawMode.HYPERGEOMETRIC else tubes.size + rng.randint(0, 4)
        direct = negative(mode, urn, tubes, k_max=k_max)
        automaton = negative_via_mmo(mode, urn, tubes, k_max=k_max)
        params = {"mode": mode.value, "urn": _label(urn), "tubes": str(tubes), "kmax": k_max}
        out.append(_compare("negative-mmo", params, direct.entries, automaton.entries,
                            abs(direct.residual - automaton.residual)))
    return out


def conditioning(rng: random.Random) -> list[IdentityReport]:
    ks = tuple(rng.randint(1, 4) for _ in range(rng.randint(1, 3)))
    r = rng.choice(RATES)
    k = rng.randint(0, sum(ks))
    params = {"ks": list(ks), "r": str(r), "K": k}
    out = [_compare("hypergeometric-via-binomials", params,
                    hypergeometric_via_conditioning(ks, r, k), hypergeometric_as_tuples(ks, k))]
    k = sum(ks) + rng.randint(0, 4)
    params = {"ks": list(ks), "r": str(r), "K": k}
    out.append(_compare("polya-via-negative-binomials", params,
                        polya_via_conditioning(ks, r, k), polya_as_tuples(ks, k)))
    return out


def corollaries(rng: random.Random) -> list[IdentityReport]:
    n, m = rng.randint(1, 4), rng.randint(1, 4)
    N, M = rng.randint(n, 8), rng.randint(m, 8)
    r = rng.choice(RATES)
    rs = {"n": n, "m": m, "r": r, "s": 1 - r}
    urn = {"n": n, "m": m, "N": N, "M": M}
    return [
        check_firstfull_identity(1, rs),
        check_firstfull_identity(2, urn),
        check_firstfull_identity(3, urn),
        check_negative_identity(1, rs, truncation=100),
        check_negative_identity(2, urn),
        check_negative_identity(3, urn, truncation=100),
    ]


_RUNNERS = {
    "vandermonde": vandermonde,
    "firstfull": firstfull_equivalence,
    "negative": negative_equivalence,
    "conditioning": conditioning,
    "corollaries": corollaries,
}


def run_suite(name: str, seed: int = 0, trials: int = 100) -> list[IdentityReport]:
    if name not in _RUNNERS:
        raise ValueError(f"unknown suite {name!r}")
    rng = random.Random(seed)
    reports = []
    for _ in range(trials):
        reports.extend(_RUNNERS[name](rng))
    return reports
