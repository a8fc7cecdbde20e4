"""Finite multisets over colour labels and their counting coefficients."""

from __future__ import annotations

from collections import Counter
from math import comb, factorial, prod
from typing import Hashable, Iterable, Iterator, Mapping, NamedTuple

from urntubes.errors import DomainError

Color = Hashable


class Multiset:
    """Immutable multiset; zero counts are never stored.

    Indexing returns the multiplicity, so ``m["x"]`` is 0 for an absent colour.
    Iteration yields the support in sorted order.
    """

    __slots__ = ("_items", "_lookup", "_hash")

    def __init__(self, counts: Mapping[Color, int] | Iterable[tuple[Color, int]] | None = None):
        if counts is None:
            pairs: Iterable[tuple[Color, int]] = ()
        elif isinstance(counts, Multiset):
            pairs = counts._items
        elif isinstance(counts, Mapping):
            pairs = counts.items()
        else:
            pairs = counts
        merged: dict[Color, int] = {}
        for colour, n in pairs:
            if isinstance(n, bool) or not isinstance(n, int):
                raise DomainError(f"count for {colour!r} is not a natural number: {n!r}")
            if n < 0:
                raise DomainError(f"negative count for {colour!r}: {n}")
            merged[colour] = merged.get(colour, 0) + n
        items = tuple(sorted((c, n) for c, n in merged.items() if n > 0))
        self._items = items
        self._lookup = dict(items)
        self._hash = hash(items)

    @classmethod
    def of(cls, **counts: int) -> "Multiset":
        return cls(counts)

    def __getitem__(self, colour: Color) -> int:
        return self._lookup.get(colour, 0)

    def __contains__(self, colour: object) -> bool:
        return colour in self._lookup

    def __iter__(self) -> Iterator[Color]:
        return (c for c, _ in self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __bool__(self) -> bool:
        return bool(self._items)

    def items(self) -> tuple[tuple[Color, int], ...]:
        return self._items

    def support(self) -> tuple[Color, ...]:
        return tuple(self)

    @property
    def size(self) -> int:
        return sum(n for _, n in self._items)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Multiset):
            return NotImplemented
        return self._items == other._items

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Multiset") -> bool:
        # Total order used only for canonical listing, not the pointwise order.
        return self._items < other._items

    def __add__(self, other: "Multiset") -> "Multiset":
        return add(self, other)

    def __sub__(self, other: "Multiset") -> "Multiset":
        return sub(self, other)

    def scale(self, k: int) -> "Multiset":
        return Multiset((c, k * n) for c, n in self._items)

    def __repr__(self) -> str:
        return f"Multiset({self!s})"

    def __str__(self) -> str:
        if not self._items:
            return "0"
        return "+".join(f"{n}{c}" for c, n in self._items)

    def to_json(self) -> dict:
        return {str(c): n for c, n in self._items}


EMPTY = Multiset()


def unit(colour: Color) -> Multiset:
    return Multiset({colour: 1})


def ones(colours: Iterable[Color]) -> Multiset:
    return Multiset((c, 1) for c in colours)


def size(phi: Multiset) -> int:
    return phi.size


def facto(phi: Multiset) -> int:
    return prod(factorial(n) for _, n in phi.items())


def coefm(phi: Multiset) -> int:
    return factorial(phi.size) // facto(phi)


def leq(phi: Multiset, psi: Multiset) -> bool:
    return all(n <= psi[c] for c, n in phi.items())


def mbinom(psi: Multiset, phi: Multiset) -> int:
    if not leq(phi, psi):
        raise DomainError(f"{phi} is not below {psi}")
    return prod(comb(n, phi[c]) for c, n in psi.items())


def multichoose(n: int, m: int) -> int:
    """Number of size-m multisets over n elements."""
    if n < 1:
        raise DomainError("multichoose needs n >= 1")
    if m < 0:
        raise DomainError("multichoose needs m >= 0")
    return comb(n + m - 1, m)


def mmultichoose(psi: Multiset, phi: Multiset) -> int:
    for c in phi:
        if c not in psi:
            raise DomainError(f"colour {c!r} of {phi} not in support of {psi}")
    return prod(multichoose(n, phi[c]) for c, n in psi.items())


def acc(seq: Iterable[Color]) -> Multiset:
    return Multiset(Counter(seq))


def add(phi: Multiset, psi: Multiset) -> Multiset:
    return Multiset(list(phi.items()) + list(psi.items()))


def sub(phi: Multiset, psi: Multiset) -> Multiset:
    if not leq(psi, phi):
        raise DomainError(f"cannot subtract {psi} from {phi}")
    return Multiset((c, n - psi[c]) for c, n in phi.items())


class Relation(NamedTuple):
    leq: bool
    lt: bool
    fully_below: bool


def relate(phi: Multiset, psi: Multiset) -> Relation:
    below = leq(phi, psi)
    fully = all(c in psi for c in phi) and all(phi[c] < n for c, n in psi.items())
    return Relation(below, below and phi != psi, fully)


def fully_below(phi: Multiset, psi: Multiset) -> bool:
    return relate(phi, psi).fully_below


def _bounded(colours: list, caps: list[int] | None, k: int) -> Iterator[tuple[int, ...]]:
    # Count vectors summing to k, first coordinate descending.
    if not colours:
        if k == 0:
            yield ()
        return
    rest_cap = None if caps is None else sum(caps[1:])
    top = k if caps is None else min(k, caps[0])
    bottom = 0 if rest_cap is None or len(colours) == 1 else max(0, k - rest_cap)
    if len(colours) == 1:
        if caps is None or k <= caps[0]:
            yield (k,)
        return
    for i in range(top, bottom - 1, -1):
        for tail in _bounded(colours[1:], None if caps is None else caps[1:], k - i):
            yield (i,) + tail


def submultisets_of_size(psi: Multiset, k: int) -> Iterator[Multiset]:
    """All phi <= psi with ||phi|| = k, in canonical order."""
    if k < 0 or k > psi.size:
        return
    colours = list(psi)
    caps = [psi[c] for c in colours]
    for counts in _bounded(colours, caps, k):
        yield Multiset(zip(colours, counts))


def multisets_of_size(support: Iterable[Color], k: int) -> Iterator[Multiset]:
    colours = sorted(set(support))
    if not colours and k > 0:
        raise DomainError("no multisets of positive size over an empty support")
    if k < 0:
        raise DomainError("negative size")
    return (Multiset(zip(colours, counts)) for counts in _bounded(colours, None, k))
