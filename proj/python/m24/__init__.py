"""Python access to the m24 core library; results are decoded from JSON."""

import json
from fractions import Fraction

from . import _core

DataError = _core.DataError


def classes():
    return json.loads(_core.classes_json())


def genus(cls, order=2):
    return json.loads(_core.genus_json(cls, order))


def jmap(cls, input="genus"):
    return json.loads(_core.jmap_json(cls, input))


def borcherds(cls, mode="product", qmax=2, smax=2):
    return json.loads(_core.borcherds_json(cls, mode, qmax, smax))


def divisors(cls, dmax="1"):
    return json.loads(_core.divisors_json(cls, str(dmax)))


def verify(suite, classes=()):
    return json.loads(_core.verify_json(suite, list(classes)))


def suite_names():
    return list(_core.suite_names())


def rational(text):
    return Fraction(text)
