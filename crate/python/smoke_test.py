"""Smoke test for the pycliffkern extension.

Build and install first:
    pip install --no-build-isolation ./crates/python
"""

import json
import sys

import pycliffkern as ck


def main() -> int:
    assert ck.kernel("zonal", k=1, m=3) == "3*x1*y1 + 3*x2*y2 + 3*x3*y3"
    assert ck.kernel("monogenic", k=0, m=3) == "1"
    assert ck.canonical(ck.kernel("monogenic", k=2, m=4), 4) == ck.kernel("monogenic", k=2, m=4, method="operational")

    herm = json.loads(ck.kernel("hermitian", p=2, q=1, n=2, json=True))
    assert herm["bidegree"] == [2, 1]
    assert all({"blade", "monomial", "coef"} <= set(t) for t in herm["terms"])
    assert ck.kernel("hermitian", p=2, q=1, n=2) == ck.kernel("hermitian", p=2, q=1, n=2, method="operational")
    assert len(ck.hermitian_trace(2, 1, 2)) == 4

    assert ck.dim("H", m=3, k=2) == 5
    assert ck.dim("P", m=4, k=3) == 20
    assert ck.dim("Hpq", n=2, p=1, q=1) == 3
    assert len(ck.basis("M", m=3, k=1)) == ck.dim("M", m=3, k=1)

    parts = ck.decompose("x1^2", mode="scalar", m=3)
    assert len(parts) == 2
    assert any("1/3" in comp for _, comp, _ in parts)

    try:
        ck.canonical("x1^2 + (", 3)
    except ValueError as e:
        assert "column" in str(e)
    else:
        raise AssertionError("parse error not raised")

    passed, report = ck.verify("orthopoly")
    assert passed and json.loads(report)[0]["suite"] == "orthopoly"
    passed, _ = ck.verify("normalization", n=2, p_max=2, q_max=2)
    assert passed

    print("pycliffkern smoke test: ok")
    return 0


if __name__ == "__main__":
    sys.exit(main())
