#!/usr/bin/env python3
"""A tour of the max-plus layer: exact scalars, residuation, vectors,
and the two-parameter combination that plays the role of a segment."""

from tropibary.core import (
    NEG_INF,
    ZERO,
    ConvexParams,
    TropVector,
    odot,
    oplus,
    residual,
    rho,
    s_point,
    scalar,
    trop_min,
)


def section(title):
    print()
    print(title)
    print("-" * len(title))


def main():
    section("Scalars are exact rationals plus a bottom element")
    a, b = scalar("-1/3"), scalar("-2")
    print(f"a = {a}, b = {b}, bottom = {NEG_INF}")
    print(f"a oplus b = max  -> {oplus(a, b)}")
    print(f"a odot b  = plus -> {odot(a, b)}")
    assert oplus(a, NEG_INF) == a and odot(a, ZERO) == a

    section("Residuation undoes odot as far as order allows")
    print(f"residual({a}, {b}) = {residual(a, b)}")
    assert odot(residual(a, b), b) == a
    # when exact division is impossible, the residual is the largest
    # c with c odot b <= a
    c = residual(b, a)
    print(f"residual({b}, {a}) = {c}; check {odot(c, a)} <= {b}")
    assert odot(c, a) <= b
    print(f"residual past bottom saturates: {NEG_INF} res {b} = {residual(NEG_INF, b)}")

    section("The metric is the exponential image distance")
    print(f"rho(0, -1)    = {rho(ZERO, scalar(-1)):.6f}")
    print(f"rho(-inf, 0)  = {rho(NEG_INF, ZERO):.6f}")
    print(f"rho(-9, -10)  = {rho(scalar(-9), scalar(-10)):.8f}  (deep weights are close)")
    assert rho(NEG_INF, ZERO) == 1.0

    section("Vectors join coordinatewise and shift by scalars")
    x = TropVector(("-1", "0"))
    y = TropVector(("0", "-2"))
    print(f"x = {x}, y = {y}")
    print(f"x join y     = {x.join(y)}")
    print(f"x shifted -1 = {x.shift(scalar(-1))}")
    print(f"min clamp    = ({trop_min(x[0], y[0])}, {trop_min(x[1], y[1])})")

    section("Convex combinations trace a path from y to x")
    # max(t, p) = 0 keeps combinations normalized; sweeping t with p = 0
    # walks one half of the segment, then sweeping p walks the other
    for t in ("-inf", "-2", "-1", "-1/2", "0"):
        params = ConvexParams(scalar(t), ZERO)
        print(f"  t = {t:>4}: s(x, y) = {s_point(x, y, params)}")
    assert s_point(x, y, ConvexParams(NEG_INF, ZERO)) == y
    assert s_point(x, y, ConvexParams(ZERO, NEG_INF)) == x
    print("endpoints recovered exactly")


if __name__ == "__main__":
    main()
