from fractions import Fraction
from math import comb

import pytest

import skeinlab as sl


def test_quantum_integers_are_exact():
    q = sl.Laurent.monomial(1)
    qinv = sl.Laurent.monomial(-1)
    assert sl.qint(3) == q * q + sl.Laurent(1) + qinv * qinv
    # [4 choose 2] at q = 1 is the ordinary binomial coefficient.
    assert sl.qbinom(4, 2).at_q_equals_one() == sl.Laurent(comb(4, 2))
    assert str(sl.qint(2)) == "q^-1 + q"


def test_rational_coefficients_round_trip():
    x = sl.Laurent.monomial(2, 0, Fraction(3, 7)) * sl.Laurent(Fraction(7, 6))
    assert x.coefficient(2) == Fraction(1, 2)
    assert x.terms() == {(2, 0): Fraction(1, 2)}
    with pytest.raises(TypeError):
        sl.Laurent(0.5)


def test_partitions_in_box_are_counted_by_binomials():
    for rows in range(4):
        for cols in range(4):
            assert len(sl.partitions_in_box(rows, cols)) == comb(rows + cols, rows)
    assert sl.is_horizontal_strip([3, 1], [2])
    assert not sl.is_horizontal_strip([2, 2], [1, 1])


@pytest.mark.parametrize("name", ["he", "newton", "he2", "some-relations-a", "some-relations-b"])
def test_symmetric_function_identities(name):
    assert sl.check_identity(name, 3)


def test_webs_parse_and_render():
    w = sl.Web.split(1, [2], 1, 1).then(sl.Web.merge(1, [1, 1]))
    assert sl.Web.parse(str(w)) == w
    assert w.source == [2] and w.target == [2]
    with pytest.raises(ValueError):
        sl.Web.parse("merge(")


def test_digon_class_is_a_quantum_binomial():
    # The (1,2) digon on a 3-colored strand is [3 choose 1] times the identity.
    digon = sl.Web.split(1, [3], 1, 2).then(sl.Web.merge(1, [1, 2]))
    assert sl.web_class(digon) == sl.qbinom(3, 1) * sl.web_class(sl.Web.identity([3]))


def test_colored_crossing_matches_cable():
    assert sl.euler_crossing(1, 1, True) == sl.cable("x+(1; 1,1)")
    report = sl.verify_skein(2, 1)
    assert report["digon"] and report["crossing"]


def test_hom_dimension_is_certified():
    # Unique lowest-degree map from the first to the second Rickard ladder on (1,1).
    source = sl.Web.ladder(1, 1, 1, 1)
    target = sl.Web.ladder(1, 1, 0, 0)
    dim, dim_next = sl.hom_dimension(source, target, 1, 12)
    assert (dim, dim_next) == (1, 1)


def test_complexes_square_to_zero():
    x = sl.mccs(1, 1, 0)
    assert x.d_squared_witness() is None
    assert x.euler_characteristic() == sl.cable("x+(1; 1,1) . x+(1; 1,1)")
    found, stabilized = x.equivalent_to(sl.full_twist_model(12), truncation=12)
    assert found and stabilized


def test_run_suite_reports():
    reports = sl.run_suite("sym", jobs=2)
    assert reports and all(r["status"] == "pass" for r in reports)
    assert reports == sorted(reports, key=lambda r: (r["check"], sorted(r["params"].items())))
    with pytest.raises(ValueError):
        sl.run_suite("nonsense")
