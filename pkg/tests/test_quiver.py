from pathlib import Path

import pytest

from ainfbench.quiver import (AInfStructure, Element, dump, load, preset_A,
                              preset_C, preset_D)
GOLDEN = Path(__file__).parent / "golden"


def test_preset_A_products(Q):
    A = preset_A(Q)
    assert A.evaluate(2, ("u", "v")) == Element.single("f1", Q.one())
    # [v][u] = [e1] composed with the (-1)^{|u|} twist
    assert A.evaluate(2, ("v", "u")) == Element.single("e1", -Q.one())
    assert A.evaluate(2, ("e0", "e1")) == Element.single("e1", -Q.one())


def test_preset_A_no_higher_products(Q):
    A = preset_A(Q)
    for t in A.cat.tuples(5):
        assert A.evaluate(5, t).is_zero()


def test_noncomposable_rejected(Q):
    A = preset_A(Q)
    with pytest.raises(ValueError):
        A.evaluate(2, ("u", "u"))  # target b does not feed source a


def test_arity_beyond_truncation(Q):
    A = preset_A(Q, truncation=4)
    with pytest.raises(ValueError):
        A.evaluate(5, ("u", "v", "u", "v", "u"))


def test_preset_C_differential(Q):
    C = preset_C(Q)
    assert C.evaluate(1, ("v0",)) == Element.single("v01", -Q.one())
    assert C.evaluate(1, ("v1",)) == Element.single("v01", Q.one())
    assert C.evaluate(2, ("v0", "u01")) == Element.single("e1", -Q.one())


def test_preset_D_differential(Q):
    D = preset_D(Q)
    want = Element({"x01": -Q.one(), "x02": -Q.one()})
    assert D.evaluate(1, ("x0",)) == want


@pytest.mark.parametrize("preset", [preset_A, preset_C, preset_D])
def test_relations_and_unitality(Q, preset):
    struct = preset(Q)
    assert struct.ainf_check(6) == []
    struct.check_unital()


def test_corrupted_product_detected(Q):
    C = preset_C(Q)
    tables = {d: dict(t) for d, t in C.tables.items()}
    tables[2][("v0", "u01")] = Element.single("e1", Q.one())  # sign flipped
    bad = AInfStructure(Q, C.cat, C.truncation, tables)
    assert bad.ainf_check(6) != []


def test_quasi_isomorphism_dimensions(Q):
    # the small dg model and the big one share all cohomology dimensions,
    # and they are those of the 6-dimensional category
    dims_C = preset_C(Q).mu1_cohomology_dims()
    dims_D = preset_D(Q).mu1_cohomology_dims()
    assert dims_C == dims_D
    assert dims_C == {
        ("a", "a", 0): 1, ("a", "a", 1): 1,
        ("a", "b", 1): 1, ("b", "a", 0): 1,
        ("b", "b", 0): 1, ("b", "b", 1): 1,
    }


def test_dump_load_roundtrip(Q):
    for preset in (preset_A, preset_C, preset_D):
        text = dump(preset(Q))
        assert dump(load(text)) == text


def test_preset_C_golden(Q):
    assert dump(preset_C(Q)) == (GOLDEN / "preset_C.alg").read_text()


def test_load_reports_line_numbers(Q):
    text = dump(preset_C(Q))
    # corrupt one product so the output degree is inconsistent
    broken = text.replace("u01 v1 -> 1*f1", "u01 v1 -> 1*f0")
    with pytest.raises(ValueError):
        load(broken)
    with pytest.raises(ValueError, match="line 6"):
        load("FIELD Q\nTRUNCATION 2\nOBJECTS\na\nGENERATORS\nbadrow\n"
             "IDENTITIES\n")


def test_degree_bookkeeping_enforced(Q):
    A = preset_A(Q)
    tables = {2: dict(A.tables[2])}
    tables[2][("u", "v")] = Element.single("f0", Q.one())  # wrong degree
    with pytest.raises(ValueError):
        AInfStructure(Q, A.cat, 12, tables)


def test_load_rejects_arity_beyond_truncation(Q):
    text = dump(preset_A(Q, truncation=2))
    broken = text.replace("TRUNCATION 2", "TRUNCATION 1")
    with pytest.raises(ValueError):
        load(broken)
