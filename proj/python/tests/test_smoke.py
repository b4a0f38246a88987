from fractions import Fraction

import m24


def test_classes():
    cs = m24.classes()
    assert len(cs) == 21
    weights = {c["name"]: Fraction(c["weight"]) for c in cs}
    assert weights["1A"] == 10
    assert weights["2A"] == 6
    assert weights["23AB"] == -1


def test_jmap_1a():
    j = m24.jmap("1A")
    assert Fraction(j["constant"]) == 20


def test_borcherds_modes_agree():
    a = m24.borcherds("2A", "product", 2, 2)
    b = m24.borcherds("2A", "fj", 2, 2)
    assert a["series"] == b["series"]
    assert [Fraction(x) for x in a["weyl"]] == [1, 1, 1]


def test_verify_subset():
    r = m24.verify("weights", ["1A", "3B"])
    assert r["overall"] == "PASS"
    assert [c["class"] for c in r["checks"]] == ["1A", "3B"]
    assert "anchors" in m24.suite_names()


def test_unknown_class_raises():
    import pytest

    with pytest.raises(Exception):
        m24.genus("99Z")
