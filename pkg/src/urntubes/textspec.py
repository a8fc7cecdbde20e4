"""Text syntax for multisets and distributions, as used on the command line.

    multiset:      2R + 3B        2*R+3*B        R + R  (repeated labels add up)
    distribution:  1/3 R + 2/3 B  1/2*a + 1/2*b

Whitespace is ignored between tokens. Error messages carry the byte offset
of the offending position in the UTF-8 encoded input.
"""

from __future__ import annotations

import re
from fractions import Fraction

from urntubes.dist import Dist
from urntubes.errors import DomainError
from urntubes.multiset import Multiset
from urntubes.numeric import fmt

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<label>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[+*/]))")
_LABEL = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class SpecError(DomainError):
    """Malformed spec text."""

    def __init__(self, message: str, offset: int | None = None):
        self.offset = offset
        super().__init__(message if offset is None else f"{message} at byte {offset}")


def _byte_offset(text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8"))


def _tokens(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise SpecError(f"unexpected character {text[bad]!r}", _byte_offset(text, bad))
        kind = m.lastgroup
        out.append((kind, m.group(kind), _byte_offset(text, m.start(kind))))
        pos = m.end()
    out.append(("end", "", _byte_offset(text, len(text))))
    return out


class _Parser:
    def __init__(self, text: str, rational: bool):
        self.toks = _tokens(text)
        self.i = 0
        self.rational = rational

    def peek(self) -> tuple[str, str, int]:
        return self.toks[self.i]

    def take(self, kind: str, value: str | None = None) -> tuple[str, str, int]:
        tok = self.peek()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value if value is not None else {"num": "a number", "label": "a label"}.get(kind, kind)
            got = "end of input" if tok[0] == "end" else repr(tok[1])
            raise SpecError(f"expected {want}, found {got}", tok[2])
        self.i += 1
        return tok

    def accept(self, value: str) -> bool:
        tok = self.peek()
        if tok[0] == "op" and tok[1] == value:
            self.i += 1
            return True
        return False

    def coefficient(self) -> tuple[Fraction, int]:
        _, num, offset = self.take("num")
        if self.rational and self.accept("/"):
            _, den, den_offset = self.take("num")
            if int(den) == 0:
                raise SpecError("zero denominator", den_offset)
            return Fraction(int(num), int(den)), offset
        return Fraction(int(num)), offset

    def terms(self) -> list[tuple[str, Fraction]]:
        out = []
        while True:
            value, offset = self.coefficient()
            if value == 0:
                raise SpecError("zero coefficient", offset)
            self.accept("*")
            _, label, _ = self.take("label")
            out.append((label, value))
            if not self.accept("+"):
                break
        self.take("end")
        return out


def parse_multiset(text: str) -> Multiset:
    terms = _Parser(text, rational=False).terms()
    return Multiset((label, int(n)) for label, n in terms)


def parse_distribution(text: str) -> Dist:
    terms = _Parser(text, rational=True).terms()
    total = sum((p for _, p in terms), Fraction(0))
    if total != 1:
        raise SpecError(f"probabilities sum to {fmt(total)}")
    return Dist(terms)


def parse_spec(text: str, kind: str) -> Multiset | Dist:
    """Parse ``text`` as a ``"multiset"`` or a ``"distribution"``."""
    if kind == "multiset":
        return parse_multiset(text)
    if kind == "distribution":
        return parse_distribution(text)
    raise ValueError(f"unknown spec kind {kind!r}")


def parse_urn(text: str, multinomial: bool) -> Multiset | Dist:
    """Urns are multisets; a multinomial urn may also be written as a distribution."""
    if multinomial and "/" in text:
        return parse_distribution(text)
    return parse_multiset(text)


def _check_label(label) -> str:
    if not isinstance(label, str) or not _LABEL.match(label):
        raise DomainError(f"colour {label!r} has no text form")
    return label


def print_multiset(m: Multiset) -> str:
    if not m:
        raise DomainError("the empty multiset has no text form")
    return " + ".join(f"{n}{_check_label(x)}" for x, n in m.items())


def print_distribution(d: Dist) -> str:
    return " + ".join(f"{fmt(p)} {_check_label(x)}" for x, p in d.items())
