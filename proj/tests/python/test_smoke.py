import pytest

import qgroup


def test_u_normal_form():
    s = qgroup.Session("1->2")
    assert s.rank == 2
    assert s.cartan == [[2, -1], [-1, 2]]
    assert s.u_nf("E1*F1 - F1*E1") == s.u_nf("(K(1,0) - K(-1,0))/(v - v^-1)")
    assert s.u_nf("0") == "0"


def test_f_serre_and_basis():
    s = qgroup.Session("1->2")
    assert s.f_nf("th1^(2)*th2 - th1*th2*th1 + th2*th1^(2)") == "0"
    assert len(s.f_basis("(1,1)")) == 2


def test_json_export():
    import json

    s = qgroup.Session("1->2")
    body = json.loads(s.u_json("E1"))
    assert body == {"schema": qgroup.SCHEMA, "terms": [{"F": "1", "K": "0", "E": "E1", "c": "1"}]}


def test_symmetries():
    s = qgroup.Session("1->2")
    x = "E1*F2 + K(1,-1)"
    assert s.ti_inverse(1, s.ti_apply(1, x)) == s.u_nf(x)
    assert s.braid_verify(1, 2)
    assert s.hopf_check("E1*E2*F1")


def test_double():
    s = qgroup.Session("1->2")
    assert s.double_mul("p(th1)", "m(th2)") == "m(th2)*p(th1)"
    assert s.double_mul("m(th2)", "p(th1)") == "m(th2)*p(th1)"


def test_hall():
    assert qgroup.hall_classes("1->2", "(1,1)", 2) == [("u(1,1)[0]", 1), ("u(1,1)[1]", 1)]
    assert sum(qgroup.hall_strata("1->2", "(2,1)", 3, 2)) == 9
    constants, mismatches = qgroup.hall_compare("1->2", "(1,0)", "(1,1)")
    assert constants > 0 and mismatches == 0


def test_verify_report():
    rep = qgroup.verify(qgroup.Session("1"), "verify-all")
    assert rep["schema"] == qgroup.SCHEMA
    assert all(c["status"] == "pass" for c in rep["checks"])
    tight = qgroup.verify(qgroup.Session("1->2", budget=10), "verify-hall")
    assert any(c["status"] == "skipped" for c in tight["checks"])
    assert not any(c["status"] == "fail" for c in tight["checks"])


def test_errors():
    s = qgroup.Session("1->2")
    with pytest.raises(qgroup.ParseError):
        s.u_nf("E9")
    with pytest.raises(ValueError):
        s.u_nf("E1 +")
    with pytest.raises(IndexError):
        s.ti_apply(3, "E1")
    with pytest.raises(qgroup.BudgetExceeded):
        qgroup.hall_strata("1->2,2->3", "(9,9,9)", 4, 1)
    assert qgroup.scalar("(v^2 - 1)/(v - 1)") == "v + 1"
