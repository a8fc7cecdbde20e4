"""Finite distributions with exact probabilities, plus validity and conditioning."""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Any, Callable, Hashable, Iterable, Iterator, Mapping

from urntubes import numeric
from urntubes.errors import ConditioningError, DomainError
from urntubes.multiset import Multiset

Predicate = Callable[[Any], Fraction]

ONE = Fraction(1)


def order_key(value: Any) -> tuple:
    """Sort key that orders mixed outcome types deterministically."""
    if isinstance(value, bool):
        return (0, int(value))
    if isinstance(value, int):
        return (0, value)
    if isinstance(value, Fraction):
        return (0, value)
    if isinstance(value, str):
        return (1, value)
    if isinstance(value, Multiset):
        return (2, tuple((order_key(c), n) for c, n in value.items()))
    if isinstance(value, tuple):
        return (3, tuple(order_key(v) for v in value))
    key = getattr(value, "order_key", None)
    if key is not None:
        return (4, key())
    return (9, repr(value))


class Dist:
    """A finitely supported distribution whose probabilities sum to exactly 1.

    Zero-probability outcomes are dropped, so equality is map equality.
    """

    __slots__ = ("_probs",)

    def __init__(self, probs: Mapping[Hashable, Fraction] | Iterable[tuple[Hashable, Fraction]]):
        pairs = probs.items() if isinstance(probs, Mapping) else probs
        merged: dict[Hashable, Fraction] = {}
        for outcome, p in pairs:
            p = numeric.as_rational(p)
            if p < 0:
                raise DomainError(f"negative probability {p} at {outcome!r}")
            if p:
                merged[outcome] = merged.get(outcome, 0) + p
        total = sum(merged.values(), Fraction(0))
        if total != 1:
            raise DomainError(f"probabilities sum to {numeric.fmt(total)}")
        self._probs = {k: merged[k] for k in sorted(merged, key=order_key)}

    @classmethod
    def point(cls, outcome: Hashable) -> "Dist":
        return cls({outcome: ONE})

    @classmethod
    def uniform(cls, outcomes: Iterable[Hashable]) -> "Dist":
        outs = list(outcomes)
        return cls((o, Fraction(1, len(outs))) for o in outs)

    def __call__(self, outcome: Hashable) -> Fraction:
        return self._probs.get(outcome, Fraction(0))

    __getitem__ = __call__

    def __contains__(self, outcome: object) -> bool:
        return outcome in self._probs

    def __iter__(self) -> Iterator[Hashable]:
        return iter(self._probs)

    def __len__(self) -> int:
        return len(self._probs)

    def items(self):
        return self._probs.items()

    def support(self) -> tuple:
        return tuple(self._probs)

    def as_dict(self) -> dict:
        return dict(self._probs)

    def map(self, f: Callable[[Hashable], Hashable]) -> "Dist":
        """Pushforward along f."""
        return Dist((f(o), p) for o, p in self._probs.items())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Dist):
            return NotImplemented
        return self._probs == other._probs

    def __hash__(self) -> int:
        return hash(frozenset(self._probs.items()))

    def __repr__(self) -> str:
        body = " + ".join(f"{numeric.fmt(p)}|{o}>" for o, p in self._probs.items())
        return f"Dist({body})"


def flrn(phi: Multiset) -> Dist:
    """Frequentist learning: normalise a non-empty multiset."""
    total = phi.size
    if total == 0:
        raise DomainError("cannot learn from an empty multiset")
    return Dist((c, Fraction(n, total)) for c, n in phi.items())


def tensor(omega: Dist, rho: Dist) -> Dist:
    return Dist(((a, b), p * q) for (a, p), (b, q) in product(omega.items(), rho.items()))


def tensor_pow(omega: Dist, k: int) -> Dist:
    if k < 1:
        raise DomainError("tensor power needs K >= 1")
    return tensor_all([omega] * k)


def tensor_all(dists: Iterable[Dist]) -> Dist:
    """Joint distribution over flat tuples."""
    return Dist(weights_product([d.as_dict() for d in dists]))


def weights_product(tables: list[Mapping[Hashable, Fraction]]) -> dict[tuple, Fraction]:
    out: dict[tuple, Fraction] = {(): ONE}
    for table in tables:
        nxt: dict[tuple, Fraction] = {}
        for prefix, p in out.items():
            for o, q in table.items():
                nxt[prefix + (o,)] = p * q
        out = nxt
    return out


def _check_pred_value(v: Fraction, outcome) -> Fraction:
    v = numeric.as_rational(v)
    if not 0 <= v <= 1:
        raise DomainError(f"predicate value {v} at {outcome!r} outside [0,1]")
    return v


def validity(omega: Dist | Mapping, p: Predicate) -> Fraction:
    items = omega.items()
    return sum((q * _check_pred_value(p(o), o) for o, q in items), Fraction(0))


def condition(omega: Dist | Mapping, p: Predicate) -> Dist:
    """Bayesian update of omega by a fuzzy predicate.

    A plain mapping of non-negative weights is accepted too, which lets a
    truncated sub-distribution be conditioned whenever the predicate is zero
    on everything that was cut off.
    """
    weighted = {o: q * _check_pred_value(p(o), o) for o, q in omega.items()}
    total = sum(weighted.values(), Fraction(0))
    if total == 0:
        raise ConditioningError("predicate has zero validity")
    return Dist((o, w / total) for o, w in weighted.items())


def indicator(accept: Callable[[Any], bool]) -> Predicate:
    return lambda o: ONE if accept(o) else Fraction(0)


def constant(value: Fraction) -> Predicate:
    value = numeric.as_rational(value)
    return lambda o: value


def pred_product(p: Predicate, q: Predicate) -> Predicate:
    return lambda o: p(o) * q(o)


def outcome_to_json(o: Any) -> Any:
    if isinstance(o, Multiset):
        return o.to_json()
    if isinstance(o, tuple):
        return [outcome_to_json(v) for v in o]
    if isinstance(o, (int, str)):
        return o
    return str(o)


def to_json(d: Dist) -> dict:
    return {
        "outcomes": [{"outcome": outcome_to_json(o), **numeric.to_json(p)} for o, p in d.items()],
        "total": "1/1",
    }


def outcome_from_json(obj: Any) -> Any:
    if isinstance(obj, dict):
        return Multiset(obj)
    if isinstance(obj, list):
        return tuple(outcome_from_json(v) for v in obj)
    return obj


def from_json(obj: dict) -> Dist:
    return Dist((outcome_from_json(e["outcome"]), numeric.from_json(e)) for e in obj["outcomes"])


class NatDist:
    """Distribution on the naturals held as explicit entries plus exact tail mass.

    ``entries`` covers k in [k_min, k_max]; ``residual`` is the mass beyond k_max,
    so entries and residual together sum to exactly 1.
    """

    __slots__ = ("entries", "residual", "k_min", "k_max")

    def __init__(self, entries: Mapping[int, Fraction], k_min: int, k_max: int,
                 residual: Fraction | None = None):
        clean = {k: Fraction(p) for k, p in sorted(entries.items()) if p}
        for k, p in clean.items():
            if p < 0:
                raise DomainError(f"negative probability at {k}")
            if not k_min <= k <= k_max:
                raise DomainError(f"entry {k} outside [{k_min}, {k_max}]")
        mass = sum(clean.values(), Fraction(0))
        if residual is None:
            residual = 1 - mass
        if residual < 0 or mass + residual != 1:
            raise DomainError(f"entries {numeric.fmt(mass)} and residual {residual} do not sum to 1")
        self.entries = clean
        self.residual = Fraction(residual)
        self.k_min = k_min
        self.k_max = k_max

    def __call__(self, k: int) -> Fraction:
        if k > self.k_max:
            raise DomainError(f"{k} lies beyond the truncation point {self.k_max}")
        return self.entries.get(k, Fraction(0))

    def items(self):
        return self.entries.items()

    def mass(self) -> Fraction:
        return 1 - self.residual

    def to_dist(self) -> Dist:
        if self.residual:
            raise DomainError("truncated distribution still has residual mass")
        return Dist(self.entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NatDist):
            return NotImplemented
        return (self.entries, self.residual, self.k_min, self.k_max) == (
            other.entries, other.residual, other.k_min, other.k_max)

    def __repr__(self) -> str:
        body = ", ".join(f"{k}: {numeric.fmt(p)}" for k, p in self.entries.items())
        return f"NatDist({{{body}}}, residual={numeric.fmt(self.residual)})"

    def to_json(self) -> dict:
        return {
            "outcomes": [{"outcome": k, **numeric.to_json(p)} for k, p in self.entries.items()],
            "residual": numeric.to_json(self.residual),
            "k_min": self.k_min,
            "k_max": self.k_max,
            "total": "1/1",
        }

    @classmethod
    def from_json(cls, obj: dict) -> "NatDist":
        return cls({e["outcome"]: numeric.from_json(e) for e in obj["outcomes"]},
                   obj["k_min"], obj["k_max"], numeric.from_json(obj["residual"]))
