"""Smoke test for the hessloci Python extension.

Build and install first:
    pip install --no-build-isolation -e crates/py
"""

import json

import hessloci


def main():
    f = hessloci.Form("x0^3 + x1^3 + x2^3")
    assert (f.nvars, f.degree, f.field) == (3, 3, "q")
    # H_f = diag(6 x_i), so h_f = 216 x0 x1 x2
    assert f.hessian()[0] == ["6*x0", "0", "0"]
    assert f.hessian_poly() == "216*x0*x1*x2"
    assert f.rank_at("[1:0:0]") == 1
    assert f.in_dk("[1:1:0]", 2) and not f.in_dk("[1:1:1]", 2)
    assert f.kernel("[1:0:0]") == ["[0:1:0]", "[0:0:1]"]
    assert f.is_smooth()

    # Jacobian ring C[x]/(x_i^2) has Hilbert function 1, 3, 3, 1
    assert f.hilbert()[:4] == [1, 3, 3, 1]
    assert f.socle()["passed"]
    assert f.membership("x0^2*x1")["verdict"] == "member"
    assert f.membership("x0*x1*x2")["verdict"] != "member"

    # rank <= 1 needs two vanishing coordinates: the three coordinate points
    assert f.strata("1", 7)["count"] == 3
    # the Hessian curve is a triangle with three nodes
    assert f.stratum_dimension("sing")["estimate"] == 0

    a = ["1", "2", "1", "1", "3"]
    g = hessloci.waring_normal(a)
    assert g.nvars == 5
    rec = hessloci.reconstruct(g.tensor(), a)
    assert rec["g"] == str(g)
    try:
        hessloci.reconstruct(g.tensor(), ["1", "2", "1", "1", "4"])
    except ValueError:
        pass
    else:
        raise AssertionError("a wrong normal vector must be rejected")

    try:
        hessloci.Form("x0^3 + x1^2")
    except ValueError:
        pass
    else:
        raise AssertionError("inhomogeneous input must be rejected")

    ids = [i for i, _ in hessloci.check_ids()]
    assert len(ids) == len(set(ids)) >= 8
    report = hessloci.run_checks(["c01-closed-forms", "c10-rank-obstruction"], seed=7)
    assert report["schema_version"] == 1 and report["passed"]
    assert [c["id"] for c in report["checks"]] == ["c01-closed-forms", "c10-rank-obstruction"]
    print(json.dumps({"ok": True, "checks": len(report["checks"])}))


if __name__ == "__main__":
    main()
