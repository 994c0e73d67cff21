import json
from fractions import Fraction

import pytest

from parabolica.polynomial import BivariatePoly
from parabolica.report import (
    PreconditionRefusal,
    full_report,
    to_jsonable,
    verify_index_identity,
)
from parabolica.parsing import parse_polynomial

X, Y = BivariatePoly.x(), BivariatePoly.y()


def test_identity_q(corpus_reports):
    rec = corpus_reports["q"].identity
    assert rec is not None
    assert rec.lhs == Fraction(1, 2) == rec.rhs
    assert rec.passed
    assert rec.epsilon == "-"
    assert (rec.p_interior, rec.p_exterior) == (1, 0)


def test_identity_g(corpus_reports):
    rec = corpus_reports["g"].identity
    assert rec.lhs == 2 == rec.rhs
    assert rec.passed
    assert rec.chi == -2
    assert (rec.p_interior, rec.p_exterior) == (8, 0)
    assert rec.per_extension == {1: Fraction(2), 2: Fraction(2)}


def test_identity_quintic_half_integer(corpus_reports):
    rec = corpus_reports["quintic"].identity
    assert rec.passed
    assert rec.lhs == Fraction(1, 2)
    assert rec.lhs.denominator == 2


def test_field_region_pair(corpus_reports):
    assert corpus_reports["f_pair"].field_region == "H in B-"
    assert corpus_reports["g_pair"].field_region == "E in B-"


def test_refusal_non_squarefree_top():
    f = Y ** 2 * (X ** 2 + Y ** 2) + X ** 2   # f_4 has a repeated factor y
    with pytest.raises(PreconditionRefusal, match="squarefree"):
        verify_index_identity(f)


def test_refusal_field_domain_empty():
    f = X ** 4 + X ** 2 * Y ** 2 + Y ** 4 + X ** 2 + Y ** 2
    with pytest.raises(PreconditionRefusal, match="field domain empty"):
        verify_index_identity(f)


def test_godron_totals_invariant(corpus_reports):
    for rep in corpus_reports.values():
        assert rep.p_interior + rep.p_exterior == len(rep.godrons)


def test_bound_records_complete(corpus_reports):
    for rep in corpus_reports.values():
        names = {b.name for b in rep.bounds}
        assert {"godron_count", "interior_godrons", "exterior_godrons",
                "convex_exterior_godron_bound"} <= names
        for b in rep.bounds:
            if b.applicable:
                assert b.passed, f"{rep.input}: {b.name}"


def test_bound_values_quartic(corpus_reports):
    rep = corpus_reports["g"]
    by_name = {b.name: b for b in rep.bounds}
    assert by_name["godron_count"].limit == 16
    assert by_name["interior_godrons"].limit == 13   # ((4-2)(8*4-21)+4)/2
    assert by_name["exterior_godrons"].limit == 10   # 1 + ((4-2)(8*4-21)-4)/2
    assert by_name["convex_exterior_godron_bound"].limit == 3 * 2 * 1 + 4


def test_index_sums(corpus_reports):
    assert corpus_reports["q"].index_sum == 1
    assert corpus_reports["g"].index_sum == 4


def test_reports_have_no_errors(corpus_reports):
    for name, rep in corpus_reports.items():
        assert rep.errors == {}, f"{name}: {rep.errors}"


def test_serialization_json_compatible(corpus_reports):
    doc = to_jsonable(corpus_reports["q"])
    text = json.dumps(doc)
    back = json.loads(text)
    assert back["identity"]["lhs"] == "1/2"
    assert back["degree"] == 3
    assert back["p_interior"] == 1


def test_report_deterministic(corpus):
    a = to_jsonable(full_report(corpus["q"], seed=0))
    b = to_jsonable(full_report(corpus["q"], seed=0))
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
