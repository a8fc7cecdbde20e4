import json
from fractions import Fraction

from hypothesis import given

from urntubes.analysis import IdentityReport
from urntubes.dist import Dist, from_json
from urntubes.emit import decimal6, emit_dist, emit_natdist, emit_reports
from urntubes.multiset import Multiset
from urntubes.negative import nmn

from conftest import distributions

F = Fraction


def test_decimal6_rounds_exactly():
    assert decimal6(F(1, 3)) == "0.333333"
    assert decimal6(F(2, 3)) == "0.666667"
    assert decimal6(F(1, 2_000_000)) == "0.000000"
    assert decimal6(F(3, 2_000_000)) == "0.000002"
    assert decimal6(F(-7, 4)) == "-1.750000"


def test_plot_data_csv():
    omega = Dist({"a": F(1, 6), "b": F(1, 2), "c": F(1, 3)})
    text = emit_natdist(nmn(omega, Multiset.of(a=2, b=4, c=3), k_max=12), "csv")
    assert text == ("k,num,den,approx\n9,35,432,0.081019\n10,875,7776,0.112526\n"
                    "11,3605,31104,0.115901\n12,1243,11664,0.106567\n")


def test_empty_report_csv_is_header_only():
    assert emit_reports("vandermonde", 0, 0, [], "csv") == "identity,params,lhs,rhs,holds,note\n"


def test_report_table_lists_failures():
    bad = IdentityReport("toy", {"n": 1}, F(1), F(2), False, "gap=1/1")
    text = emit_reports("toy", 3, 1, [bad], "table")
    assert "1 checks FAILED" in text and "FAILED toy n=1 lhs=1/1 rhs=2/1 gap=1/1" in text


def test_table_is_aligned_without_trailing_spaces():
    text = emit_dist(Dist({"long-name": F(1, 3), "x": F(2, 3)}), "table")
    lines = text.splitlines()
    assert lines[0] == "outcome    probability  approx"
    assert lines[2] == "x          2/3          0.666667"
    assert all(line == line.rstrip() for line in lines)


@given(distributions())
def test_json_round_trip(d):
    assert from_json(json.loads(emit_dist(d, "json"))) == d


def test_multiset_outcomes_render_compactly():
    d = Dist({Multiset.of(a=2, b=1): F(1, 2), Multiset.of(a=3): F(1, 2)})
    assert emit_dist(d, "csv").splitlines()[1:] == ["2a+1b,1,2,0.500000", "3a,1,2,0.500000"]
