import os
from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from urntubes.dist import Dist
from urntubes.multiset import Multiset

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=400, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

COLOURS = ("a", "b", "c", "d")


@st.composite
def multisets(draw, colours=COLOURS, min_count=0, max_count=5, min_colours=1, max_colours=4,
              nonempty=True):
    k = draw(st.integers(min_colours, min(max_colours, len(colours))))
    counts = {c: draw(st.integers(min_count, max_count)) for c in colours[:k]}
    if nonempty and not any(counts.values()):
        counts[colours[0]] = 1
    return Multiset(counts)


@st.composite
def distributions(draw, colours=COLOURS, max_colours=4, max_weight=6):
    k = draw(st.integers(1, max_colours))
    weights = [draw(st.integers(1, max_weight)) for _ in range(k)]
    total = sum(weights)
    return Dist({c: Fraction(w, total) for c, w in zip(colours, weights)})


rationals = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 100)
unit_open = st.fractions(min_value=Fraction(1, 50), max_value=Fraction(49, 50), max_denominator=50)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
