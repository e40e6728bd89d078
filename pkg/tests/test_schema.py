import json
from pathlib import Path

import pytest

from qpfaff.catalog import CATALOG, get_identity
from qpfaff.errors import NotTerminating, SpecFileError, UnboundSymbol
from qpfaff.pfaff import certify_identity
from qpfaff.schema import dumps, ingest_spec_file, loads, record_to_json
from qpfaff.catalog import lhs_value

DATA = Path(__file__).parent / "data"


def test_file_redeclaring_q_binomial_certifies_identically():
    rec = ingest_spec_file(DATA / "q_binomial.json")
    assert rec == get_identity("T1.1")
    a = certify_identity(rec, n_max=5, samples=6)
    b = certify_identity("T1.1", n_max=5, samples=6)
    assert [s.to_json() for s in a.samples] == [s.to_json() for s in b.samples]


@pytest.mark.parametrize("rid", list(CATALOG))
def test_round_trip(rid):
    rec = get_identity(rid)
    (back,) = loads(dumps([rec]))
    assert back == rec


def test_multi_identity_file():
    recs = loads(dumps([get_identity("T1.6a"), get_identity("T1.6b")]))
    assert [r.id for r in recs] == ["T1.6a", "T1.6b"]


def test_missing_terminating_parameter():
    doc = record_to_json(get_identity("T1.2"))
    doc["lhs"]["num"] = doc["lhs"]["num"][:1] + [doc["lhs"]["num"][0]]
    doc["lhs"]["terminating_index"] = None
    doc["recurrences"] = []
    (rec,) = loads(json.dumps(doc))
    from qpfaff.algebra import Point
    from fractions import Fraction as F

    with pytest.raises(NotTerminating):
        lhs_value(rec, Point.of({"a": F(2), "c": F(3), "q": F(1, 2)}, 1, "q"))


def test_unknown_symbol_at_load():
    doc = record_to_json(get_identity("T1.1"))
    doc["lhs"]["arg"]["exponents"]["w"] = {"const": 1, "n": 0}
    with pytest.raises(UnboundSymbol) as err:
        loads(json.dumps(doc))
    assert "w" in str(err.value)
    assert "lhs" in str(err.value)


def test_syntax_error_has_position():
    with pytest.raises(SpecFileError) as err:
        loads('{"id": "x",\n  "symbols": [}')
    assert "line 2" in str(err.value)


def test_field_diagnostics():
    doc = record_to_json(get_identity("T1.1"))
    del doc["rhs"]
    with pytest.raises(SpecFileError) as err:
        loads(json.dumps(doc))
    assert "rhs" in str(err.value)
    doc = record_to_json(get_identity("T1.1"))
    doc["lhs"]["arg"]["coefficient"] = 0.5
    with pytest.raises(SpecFileError):
        loads(json.dumps(doc))
