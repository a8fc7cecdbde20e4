"""Rendering of results as aligned tables, JSON or CSV.

Every renderer is a pure function of its input, so identical results give
byte-identical text. Approximations are rounded from the exact value with
integer arithmetic and never pass through binary floats.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Iterable, Sequence

from urntubes import numeric
from urntubes.dist import Dist, NatDist, to_json as dist_to_json
from urntubes.multiset import Multiset

FORMATS = ("table", "json", "csv")


def decimal6(x: Fraction) -> str:
    """x rounded half-to-even to six decimals."""
    scaled = round(Fraction(x) * 10**6)
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), 10**6)
    return f"{sign}{whole}.{frac:06d}"


def outcome_text(x) -> str:
    if isinstance(x, tuple):
        return "(" + ",".join(outcome_text(v) for v in x) + ")"
    return str(x)


def table(header: Sequence[str], rows: Iterable[Sequence[str]]) -> str:
    rows = [list(map(str, r)) for r in rows]
    widths = [max([len(h)] + [len(r[i]) for r in rows]) for i, h in enumerate(header)]
    lines = []
    for r in [list(header)] + rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
    return "\n".join(lines) + "\n"


def csv_text(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def json_text(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _prob_rows(pairs) -> list[list[str]]:
    return [[outcome_text(x), numeric.fmt(p), decimal6(p)] for x, p in pairs]


def _csv_rows(pairs) -> list[list[str]]:
    return [[outcome_text(x), str(p.numerator), str(p.denominator), decimal6(p)] for x, p in pairs]


def emit_dist(d: Dist, fmt: str) -> str:
    if fmt == "json":
        return json_text(dist_to_json(d))
    if fmt == "csv":
        return csv_text(["outcome", "num", "den", "approx"], _csv_rows(d.items()))
    return table(["outcome", "probability", "approx"], _prob_rows(d.items()))


def emit_natdist(d: NatDist, fmt: str) -> str:
    """Negative distributions; the CSV form is plot data and leaves out the residual."""
    if fmt == "json":
        return json_text(d.to_json())
    if fmt == "csv":
        return csv_text(["k", "num", "den", "approx"], _csv_rows(d.items()))
    rows = _prob_rows(d.items()) + _prob_rows([("residual", d.residual)])
    return table(["k", "probability", "approx"], rows)


def emit_points(rho: Dist, share: Fraction, fmt: str) -> str:
    if fmt == "json":
        return json_text({"chances": dist_to_json(rho), "share": numeric.to_json(share)})
    pairs = list(rho.items()) + [("share", share)]
    if fmt == "csv":
        return csv_text(["outcome", "num", "den", "approx"], _csv_rows(pairs))
    return table(["outcome", "value", "approx"], _prob_rows(pairs))


def emit_grid(cells: list[tuple[int, int, Fraction]], fmt: str) -> str:
    """A's share for every interrupted score (wins_a, wins_b)."""
    if fmt == "json":
        return json_text({"grid": [{"wins_a": a, "wins_b": b, "share": numeric.to_json(s)}
                                   for a, b, s in cells]})
    if fmt == "csv":
        return csv_text(["wins_a", "wins_b", "num", "den", "approx"],
                        [[a, b, s.numerator, s.denominator, decimal6(s)] for a, b, s in cells])
    return table(["wins_a", "wins_b", "share", "approx"],
                 [[a, b, numeric.fmt(s), decimal6(s)] for a, b, s in cells])


def _params_text(params: dict) -> str:
    return ";".join(f"{k}={outcome_text(v) if not isinstance(v, list) else v}"
                    for k, v in sorted(params.items())).replace(" ", "")


def emit_reports(suite: str, seed: int, trials: int, reports, fmt: str) -> str:
    failed = [r for r in reports if not r.holds]
    if fmt == "json":
        return json_text({"suite": suite, "seed": seed, "trials": trials,
                          "checked": len(reports), "failed": len(failed),
                          "reports": [r.to_json() for r in reports]})
    if fmt == "csv":
        return csv_text(["identity", "params", "lhs", "rhs", "holds", "note"],
                        [[r.identity, _params_text(r.params), numeric.fmt(r.lhs),
                          numeric.fmt(r.rhs), str(r.holds).lower(), r.note] for r in reports])
    counts: dict[str, list[int]] = {}
    for r in reports:
        c = counts.setdefault(r.identity, [0, 0])
        c[0] += 1
        c[1] += not r.holds
    text = table(["identity", "checked", "failed"],
                 [[name, c[0], c[1]] for name, c in sorted(counts.items())])
    text += f"suite {suite}, seed {seed}, {trials} trials: "
    text += "all checks hold\n" if not failed else f"{len(failed)} checks FAILED\n"
    for r in failed:
        text += f"FAILED {r.identity} {_params_text(r.params)} lhs={numeric.fmt(r.lhs)} " \
                f"rhs={numeric.fmt(r.rhs)} {r.note}".rstrip() + "\n"
    return text
