"""Smoke test for the flataffine extension module."""

from fractions import Fraction

import flataffine as fa


def main() -> None:
    names = fa.catalog()
    assert "P1" in names["lsa"] and "D6" in names["devmap"], names

    a = fa.Lsa("F1", alpha="2")
    assert a.dim == 2 and a.is_left_symmetric()
    e1, e2 = ["1", "0"], ["0", "1"]
    assert [Fraction(v) for v in a.product(e1, e2)] == [
        Fraction(c) for c in a.constants()[0][1]
    ]

    x = fa.Lsa("P5").exp_map([0.3, -0.2], [0.4, 0.05])
    assert len(x) == 2 and all(map(lambda v: v == v, x))

    t = fa.AffineMap([[2.0, 0.0], [0.0, 3.0]], [1.0, -1.0])
    back = t.inverse().apply(t.apply([0.5, 0.25]))
    assert max(abs(u - v) for u, v in zip(back, [0.5, 0.25])) < 1e-12
    assert t.compose(t.inverse()).distance(fa.AffineMap.identity(2)) < 1e-12
    assert fa.AffineMap([[2.0, 0.0], [0.0, 3.0]], [0.0, 0.0]).preserves("orthant:2", n=2)
    assert not fa.AffineMap([[-1.0, 0.0], [0.0, 1.0]], [0.0, 0.0]).preserves("orthant:2", n=2)

    assert fa.stabilizer_dim("orthant:1", n=3) == 9
    assert len(fa.stabilizer_basis("parabola", n=2)) == 2

    reports = fa.verify("devmap", "D6")
    failed = {r["check"] for r in reports if r["status"] == "fail"}
    assert failed == {"equivariance:D6/rho6"}, failed
    assert all(r["known_erratum"] for r in reports if r["status"] == "fail")

    try:
        fa.Lsa("Q9")
    except ValueError:
        pass
    else:
        raise AssertionError("unknown name accepted")

    code, out, _ = fa.run_cli(["verify", "lsa", "P2", "--format", "csv"])
    assert code == 0 and out.startswith("check,status"), out

    doc = fa.report_all(seed=42)
    s = doc["summary"]
    assert s["known_errata_count"] == 2 and s["unexpected_failures"] == 0, s
    print(f"smoke test ok: {s['pass_count']}/{s['total']} checks pass, {s['known_errata_count']} known errata")


if __name__ == "__main__":
    main()
