"""Markov models with output: probabilistic automata iterated until they emit.

A model is any pure function from a position to a ``Dist`` over ``Continue``
and ``Output`` steps. Positions must be hashable so that equal positions
reached along different paths are merged into one entry.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Hashable, Iterator, NamedTuple

from urntubes import numeric
from urntubes.dist import Dist, order_key, outcome_to_json
from urntubes.draws import DrawMode, as_state
from urntubes.errors import DomainError
from urntubes.firstfull import check_tubes
from urntubes.multiset import Multiset, leq, unit


@dataclass(frozen=True)
class Continue:
    position: Hashable

    def order_key(self) -> tuple:
        return (0, order_key(self.position))


@dataclass(frozen=True)
class Output:
    value: Hashable

    def order_key(self) -> tuple:
        return (1, order_key(self.value))


Mmo = Callable[[Any], Dist]


def _advance(m: Mmo, state: dict) -> dict:
    nxt: dict = {}
    for step, q in state.items():
        if isinstance(step, Output):
            nxt[step] = nxt.get(step, 0) + q
            continue
        for s, r in m(step.position).items():
            nxt[s] = nxt.get(s, 0) + q * r
    return nxt


def _advance_unmerged(m: Mmo, state: list) -> list:
    nxt = []
    for step, q in state:
        if isinstance(step, Output):
            nxt.append((step, q))
        else:
            nxt.extend((s, q * r) for s, r in m(step.position).items())
    return nxt


def iterate(m: Mmo, start: Hashable, n: int, merge: bool = True) -> Dist:
    """The n-fold iteration of m from ``start``.

    With ``merge=False`` every path is kept separately until the end, which
    is exponentially slower but gives the same distribution.
    """
    if merge:
        state: dict = {Continue(start): Fraction(1)}
        for _ in range(n):
            state = _advance(m, state)
        return Dist(state)
    paths: list = [(Continue(start), Fraction(1))]
    for _ in range(n):
        paths = _advance_unmerged(m, paths)
    return Dist(paths)


class Absorption(NamedTuple):
    outputs: Dist | dict
    residual: Fraction
    steps: int


def run_to_absorption(m: Mmo, start: Hashable, max_steps: int) -> Absorption:
    """Iterate until every path has emitted, or give up after ``max_steps``.

    ``outputs`` is a ``Dist`` when nothing is left over; otherwise it is the
    raw mapping of captured output mass and ``residual`` holds the rest.
    """
    if max_steps < 1:
        raise DomainError("max_steps must be at least 1")
    state: dict = {Continue(start): Fraction(1)}
    steps = 0
    while steps < max_steps and any(isinstance(s, Continue) for s in state):
        state = _advance(m, state)
        steps += 1
    outputs = {s.value: q for s, q in state.items() if isinstance(s, Output) and q}
    residual = sum((q for s, q in state.items() if isinstance(s, Continue)), Fraction(0))
    if residual == 0:
        return Absorption(Dist(outputs), residual, steps)
    return Absorption(dict(sorted(outputs.items(), key=lambda kv: order_key(kv[0]))), residual, steps)


def emissions(m: Mmo, start: Hashable) -> Iterator[tuple[int, dict, dict]]:
    """Yield, per step n >= 1, the output mass first emitted at step n and the
    positions still running afterwards. Runs until absorption."""
    running: dict = {start: Fraction(1)}
    n = 0
    while running:
        n += 1
        emitted: dict = {}
        nxt: dict = {}
        for pos, q in running.items():
            for s, r in m(pos).items():
                if isinstance(s, Output):
                    emitted[s.value] = emitted.get(s.value, 0) + q * r
                else:
                    nxt[s.position] = nxt.get(s.position, 0) + q * r
        running = nxt
        yield n, emitted, running


def trace_record(n: int, emitted: dict, running: dict) -> dict:
    """JSON-ready description of one iteration step."""

    def pos_json(p):
        if isinstance(p, tuple):
            return [outcome_to_json(v) for v in p]
        return outcome_to_json(p)

    return {
        "step": n,
        "positions": [
            {"position": pos_json(p), **numeric.to_json(q)}
            for p, q in sorted(running.items(), key=lambda kv: order_key(kv[0]))
        ],
        "outputs": [
            {"output": outcome_to_json(v), **numeric.to_json(q)}
            for v, q in sorted(emitted.items(), key=lambda kv: order_key(kv[0]))
        ],
    }


def _mn_kernel(omega: Dist) -> Mmo:
    def kernel(tubes: Multiset) -> Dist:
        steps = []
        for x, p in omega.items():
            if tubes[x] > 1:
                steps.append((Continue(tubes - unit(x)), p))
            elif tubes[x] == 1:
                steps.append((Output(x), p))
            else:
                raise DomainError(f"colour {x!r} has no tube")
        return Dist(steps)

    return kernel


def _urn_kernel(delta: int) -> Mmo:
    def kernel(position: tuple[Multiset, Multiset]) -> Dist:
        urn, tubes = position
        total = urn.size
        steps = []
        for x, n in urn.items():
            p = Fraction(n, total)
            if tubes[x] > 1:
                nxt_urn = urn - unit(x) if delta < 0 else urn + unit(x)
                steps.append((Continue((nxt_urn, tubes - unit(x))), p))
            elif tubes[x] == 1:
                steps.append((Output(x), p))
            else:
                raise DomainError(f"colour {x!r} has no tube")
        return Dist(steps)

    return kernel


def firstfull_mmo(mode: DrawMode, urn: Dist | Multiset) -> Mmo:
    """Automaton whose absorption distribution is the first-full distribution.

    Positions are the remaining tube lengths (multinomial) or
    ``(urn, tubes)`` pairs (hypergeometric, Polya).
    """
    mode = DrawMode.parse(mode)
    if mode is DrawMode.MULTINOMIAL:
        return _mn_kernel(as_state(urn))
    if not isinstance(urn, Multiset):
        raise DomainError(f"{mode.value} automaton needs a multiset urn")
    return _urn_kernel(-1 if mode is DrawMode.HYPERGEOMETRIC else +1)


def firstfull_start(mode: DrawMode, urn: Dist | Multiset, tubes: Multiset) -> Hashable:
    mode = DrawMode.parse(mode)
    check_tubes(tubes)
    if mode is DrawMode.MULTINOMIAL:
        colours = as_state(urn).support()
    else:
        colours = urn.support()
        if mode is DrawMode.HYPERGEOMETRIC and not leq(tubes, urn):
            raise DomainError(f"urn {urn} cannot fill tubes {tubes}")
    if set(colours) != set(tubes.support()):
        raise DomainError("urn and tube colours differ")
    return tubes if mode is DrawMode.MULTINOMIAL else (urn, tubes)


def firstfull_steps(tubes: Multiset) -> int:
    """Iterations after which every path has emitted: ||tubes|| - |X| + 1."""
    return tubes.size - len(tubes) + 1


def firstfull_via_mmo(mode: DrawMode, urn: Dist | Multiset, tubes: Multiset) -> Absorption:
    mode = DrawMode.parse(mode)
    start = firstfull_start(mode, urn, tubes)
    return run_to_absorption(firstfull_mmo(mode, urn), start, firstfull_steps(tubes))
