#!/usr/bin/env python3
"""Idempotent measures: normalized weight profiles that evaluate
functions by max(weight + value), combine pointwise, and push forward
along maps of the underlying space."""

from tropibary.core import ConvexParams, ZERO, odot, oplus, scalar
from tropibary.measures import (
    FiniteSpace,
    FunctionTable,
    IdemMeasure,
    SpaceMap,
    combine,
    measure_dist,
    pushforward,
)


def section(title):
    print()
    print(title)
    print("-" * len(title))


def main():
    space = FiniteSpace(3, labels=("a", "b", "c"))

    section("Construction normalizes to canonical form")
    # duplicate atoms merge by max, bottom weights vanish, the top weight is 0
    mu = IdemMeasure([(0, scalar("-1/2")), (0, scalar("0")), (1, scalar("-inf")), (2, scalar("-1"))], space=space)
    print(f"atoms: {[(space.labels[i], str(w)) for i, w in mu.atoms]}")
    assert mu == IdemMeasure([(0, ZERO), (2, scalar("-1"))], space=space)

    section("Evaluation is a normalized max-plus functional")
    phi = FunctionTable(space, ["0", "-2", "1"])
    print(f"phi = {list(map(str, phi.values))}")
    print(f"mu(phi) = max(0 + 0, -1 + 1) = {mu(phi)}")
    const = FunctionTable.constant(space, "-3/4")
    print(f"mu(const -3/4) = {mu(const)}  (normalization)")
    psi = FunctionTable(space, ["-1", "0", "0"])
    lhs, rhs = mu(phi.join(psi)), max(mu(phi), mu(psi))
    print(f"mu(phi join psi) = {lhs} = max(mu phi, mu psi) = {rhs}  (max-additivity)")
    assert lhs == rhs

    section("Combination takes pointwise maxima of shifted weights")
    nu = IdemMeasure([(1, ZERO), (2, scalar("-1/4"))], space=space)
    params = ConvexParams(scalar("-1/2"), ZERO)
    both = combine(mu, nu, params)
    print(f"combine(mu, nu, t=-1/2, p=0): {[(space.labels[i], str(w)) for i, w in both.atoms]}")
    # the combination is affine in evaluation
    assert both(phi) == oplus(odot(scalar("-1/2"), mu(phi)), nu(phi))

    section("Pushforward groups weights along a map")
    two = FiniteSpace(2, labels=("lo", "hi"))
    collapse = SpaceMap(space, two, [0, 0, 1])
    image = pushforward(collapse, both)
    print(f"collapse a,b -> lo, c -> hi: {[(two.labels[i], str(w)) for i, w in image.atoms]}")
    table_on_two = FunctionTable(two, ["0", "-1"])
    pulled = FunctionTable(space, [table_on_two.values[collapse.table[i]] for i in range(space.n)])
    assert image(table_on_two) == both(pulled)
    print("evaluation against pulled-back tables agrees")

    section("Distance between measures")
    print(f"measure_dist(mu, nu)  = {measure_dist(mu, nu):.6f}")
    print(f"measure_dist(mu, mu)  = {measure_dist(mu, mu):.6f}")


if __name__ == "__main__":
    main()
