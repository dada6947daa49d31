"""Quick end-to-end check of the regmap extension module."""

import regmap


def main():
    g = regmap.Group("PSL2:5")
    assert g.order == 60
    assert g.spectrum() == [1, 2, 3, 5]
    assert sum(size for _, size, _ in g.classes()) == 60

    rec = g.enumerate_pairs(3, 5)
    assert rec["count"] == 120 and rec["euler"]["chi"] == 2

    e = regmap.euler_characteristic(720, 5, 6)
    assert e["chi"] == -96 and e["factored"] == "-(2^5*3)"

    try:
        regmap.euler_characteristic(60, 7, 5)
    except regmap.ArithmeticError:
        pass
    else:
        raise AssertionError("7 does not divide 60")

    try:
        regmap.Group("S:9", max_order=1000)
    except regmap.CapExceededError:
        pass
    else:
        raise AssertionError("cap not enforced")

    assert regmap.Group("PSL2:7").prime_graph() == "2*:\n3:\n7:\n"
    assert regmap.Group("PSL2:5").f_value() == 1

    sl28 = regmap.Group("SL2:8")
    chis = {(r["m"], r["n"]): r["euler"]["chi"] for r in sl28.classify()}
    assert chis[(7, 9)] == -124

    thm = regmap.verify_theorem_12()
    assert thm["pass"] and len(thm["hits"]) == 4

    fam = regmap.infinite_family(24)
    assert fam["x"] == 578525 and fam["chi_closed_form"] == -(2 ** 25)

    ppd = regmap.primitive_prime_divisors(2, 6)
    assert ppd["primes"] == [] and ppd["exception"] == "SixTwo"
    assert regmap.order_formula("E8:2") > 2 ** 200

    print("smoke test passed")


if __name__ == "__main__":
    main()
