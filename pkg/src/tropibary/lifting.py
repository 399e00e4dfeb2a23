"""Single-shot openness lifts for max-plus convex structure maps.

Each lift answers the same shape of question: a structure map (convex
combination of measures, image under a merge of spaces, convex
combination of points, barycenter) sends some input tuple to an image;
given a nearby target, produce a preimage tuple that hits the target
exactly and stays close to the input.  Every constructor is partial: far
targets are refused with `OutsideValidityRegion` naming the inequality
that failed.  Exactness of accepted witnesses is asserted on every call.

`brute_force_*` are independent oracles: they enumerate candidate
witnesses over value-adapted grids and keep whatever recombines exactly,
never consulting the constructive branch logic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .barycenter import barycenter, barycenter_of_measures
from .core import (
    NEG_INF,
    ZERO,
    ConvexParams,
    TropScalar,
    TropVector,
    odot,
    oplus,
    oplus_all,
    point_dist,
    residual,
    rho,
    s_point,
    trop_min,
)
from .errors import (
    BadInput,
    BudgetExceeded,
    InconsistentFiber,
    NoZeroWeightPrefix,
    OutsideValidityRegion,
    SpaceMismatch,
)
from .geometry import Box
from .measures import (
    FiniteSpace,
    IdemMeasure,
    SpaceMap,
    combine,
    measure_dist,
    pushforward,
)


@dataclass(frozen=True)
class LiftWitness:
    """Preimage returned by a lift, with the branch that produced it."""

    lifted_first: object
    lifted_second: object
    params: ConvexParams
    case_tag: str


def witness_distance(witness: LiftWitness, first, second, params: ConvexParams) -> float:
    """Distance from a witness back to the lifted inputs."""
    parts = [witness.params.dist(params)]
    for got, ref in ((witness.lifted_first, first), (witness.lifted_second, second)):
        if isinstance(ref, IdemMeasure):
            parts.append(measure_dist(got, ref))
        elif isinstance(ref, TropVector):
            parts.append(point_dist(got, ref))
        elif isinstance(ref, TropScalar):
            parts.append(rho(got, ref))
        else:
            raise BadInput(f"no distance for {ref!r}")
    return max(parts)


# -- convex combinations of measures on a finite space ----------------------


def lift_s_finite(
    first: IdemMeasure,
    second: IdemMeasure,
    params: ConvexParams,
    target: IdemMeasure,
) -> LiftWitness:
    """Lift the convex combination map through a target measure.

    Finds (first', second', params') with
    combine(first', second', params') == target, staying close to the
    inputs when the target is close to combine(first, second, params).
    When the target equals the image the inputs come back unchanged.
    """
    if first.space is None or first.space != second.space or first.space != target.space:
        raise SpaceMismatch("lift inputs must share one finite space")
    if params.p < ZERO:
        inner = lift_s_finite(second, first, params.swapped(), target)
        return LiftWitness(
            inner.lifted_second,
            inner.lifted_first,
            inner.params.swapped(),
            inner.case_tag + "/swapped",
        )
    space = first.space
    lam = first.density().values
    bet = second.density().values
    alpha = target.density().values
    t = params.t

    if t == ZERO:
        return _lift_equal_params(space, lam, bet, alpha, first, second, target)
    if t.is_bottom:
        witness = LiftWitness(first, target, ConvexParams(NEG_INF, 0), "t<p/t=-inf")
        assert combine(witness.lifted_first, witness.lifted_second, witness.params) == target
        return witness
    return _lift_strict_params(space, lam, bet, alpha, t, first, second, target)


def _lift_equal_params(space, lam, bet, alpha, first, second, target) -> LiftWitness:
    """Branch for params (0, 0): the plain pairwise max of measures."""
    n = space.n
    lower = [i for i in range(n) if lam[i] < bet[i]]
    higher = [i for i in range(n) if lam[i] > bet[i]]
    in_lower = set(lower)
    in_higher = set(higher)
    zeros = [i for i in range(n) if alpha[i] == ZERO]
    pivot_tied = [i for i in zeros if i not in in_lower and i not in in_higher]
    pivot_lower = [i for i in zeros if i in in_lower]

    if pivot_tied:
        for i in lower:
            if not alpha[i] >= lam[i]:
                raise OutsideValidityRegion(
                    f"target[{i}] = {alpha[i]} < first weight {lam[i]} on the lower set"
                )
        for i in higher:
            if not alpha[i] >= bet[i]:
                raise OutsideValidityRegion(
                    f"target[{i}] = {alpha[i]} < second weight {bet[i]} on the higher set"
                )
        lam2 = [lam[i] if i in in_lower else alpha[i] for i in range(n)]
        bet2 = [bet[i] if i in in_higher else alpha[i] for i in range(n)]
        witness = LiftWitness(
            IdemMeasure.from_weights(space, lam2),
            IdemMeasure.from_weights(space, bet2),
            ConvexParams(0, 0),
            "t=p=0/pivot-tied",
        )
    elif pivot_lower:
        c = oplus_all(alpha[i] for i in range(n) if i not in in_lower)
        if c.is_bottom:
            raise OutsideValidityRegion("target carries no weight off the lower set")
        for i in lower:
            if not alpha[i] >= odot(c, lam[i]):
                raise OutsideValidityRegion(
                    f"target[{i}] = {alpha[i]} < shifted first weight {odot(c, lam[i])}"
                )
        for i in higher:
            if not alpha[i] >= bet[i]:
                raise OutsideValidityRegion(
                    f"target[{i}] = {alpha[i]} < second weight {bet[i]} on the higher set"
                )
        lam2 = [lam[i] if i in in_lower else residual(alpha[i], c) for i in range(n)]
        bet2 = [bet[i] if i in in_higher else alpha[i] for i in range(n)]
        witness = LiftWitness(
            IdemMeasure.from_weights(space, lam2),
            IdemMeasure.from_weights(space, bet2),
            ConvexParams(c, 0),
            "t=p=0/pivot-lower",
        )
    else:
        inner = _lift_equal_params(space, bet, lam, alpha, second, first, target)
        witness = LiftWitness(
            inner.lifted_second,
            inner.lifted_first,
            inner.params.swapped(),
            inner.case_tag + "/swapped",
        )
    assert combine(witness.lifted_first, witness.lifted_second, witness.params) == target
    return witness


def _lift_strict_params(space, lam, bet, alpha, t, first, second, target) -> LiftWitness:
    """Branch for params (t, 0) with finite t < 0."""
    n = space.n
    shifted = [odot(t, lam[i]) for i in range(n)]
    in_lower = {i for i in range(n) if shifted[i] < bet[i]}
    in_higher = {i for i in range(n) if shifted[i] > bet[i]}
    if not any(alpha[i] == ZERO for i in in_lower):
        raise OutsideValidityRegion(
            "target has no zero-weight atom where the second measure strictly dominates"
        )
    retained = [i for i in range(n) if i not in in_lower and not lam[i].is_bottom]
    if not retained:
        c = ZERO
        tag = "t<p/empty-complement"
    elif any(lam[i] == ZERO for i in in_lower):
        c = oplus_all(residual(alpha[i], odot(t, lam[i])) for i in retained)
        tag = "t<p/zero-anchored-lower"
    else:
        c = oplus_all(residual(alpha[i], t) for i in retained)
        tag = "t<p/anchor-off-lower"
    if c.is_bottom:
        raise OutsideValidityRegion("target weights vanish on the retained support")
    shift = odot(t, c)
    if shift > ZERO:
        raise OutsideValidityRegion(f"combined shift {shift} exceeds 0")
    for i in range(n):
        if i in in_lower:
            if not alpha[i] >= odot(shift, lam[i]):
                raise OutsideValidityRegion(
                    f"target[{i}] = {alpha[i]} < shifted first weight {odot(shift, lam[i])}"
                )
        elif i in in_higher and not alpha[i] >= bet[i]:
            raise OutsideValidityRegion(
                f"target[{i}] = {alpha[i]} < second weight {bet[i]} on the higher set"
            )
        if i not in in_lower and lam[i].is_bottom and not alpha[i] <= shift:
            raise OutsideValidityRegion(
                f"target[{i}] = {alpha[i]} exceeds the shift {shift} off the first support"
            )
    lam2 = [
        lam[i]
        if i in in_lower
        else (NEG_INF if alpha[i].is_bottom else residual(alpha[i], shift))
        for i in range(n)
    ]
    bet2 = [bet[i] if i in in_higher else alpha[i] for i in range(n)]
    witness = LiftWitness(
        IdemMeasure.from_weights(space, lam2),
        IdemMeasure.from_weights(space, bet2),
        ConvexParams(shift, 0),
        tag,
    )
    assert combine(witness.lifted_first, witness.lifted_second, witness.params) == target
    return witness


# -- fibers of merge maps ----------------------------------------------------


class MergeMap:
    """Surjection collapsing the last two source points onto the last
    target point, identity elsewhere."""

    __slots__ = ("source", "target")

    def __init__(self, source: FiniteSpace, target: FiniteSpace):
        if source.n != target.n + 1:
            raise BadInput("a merge map drops exactly one point")
        self.source = source
        self.target = target

    def as_space_map(self) -> SpaceMap:
        n = self.target.n
        return SpaceMap(self.source, self.target, list(range(n)) + [n - 1])

    def __repr__(self) -> str:
        return f"MergeMap({self.source.n} -> {self.target.n})"


def _check_fiber(nu: IdemMeasure, mu: IdemMeasure, a: IdemMeasure, params: ConvexParams, f: SpaceMap):
    image = combine(mu, a, params)
    pushed = pushforward(f, nu)
    if pushed != image:
        pd = pushed.density().values
        im = image.density().values
        for j, (x, y) in enumerate(zip(pd, im)):
            if x != y:
                raise InconsistentFiber(
                    f"coordinate {j}: pushforward gives {x}, combination gives {y}"
                )
        raise InconsistentFiber("pushforward differs from the combination")


def lift_merge_fiber(
    nu: IdemMeasure,
    mu: IdemMeasure,
    a: IdemMeasure,
    params: ConvexParams,
    merge: MergeMap,
) -> tuple[IdemMeasure, IdemMeasure]:
    """Split nu into a combination over the merge's source.

    Given nu with pushforward(merge, nu) == combine(mu, a, params),
    returns (lam, eta) on the source with pushforward lam == mu,
    pushforward eta == a, and combine(lam, eta, params) == nu.  The two
    shared weights split by min against the fiber weights; everything is
    checked exactly and a failed precondition raises InconsistentFiber.
    """
    if nu.space != merge.source or mu.space != merge.target or a.space != merge.target:
        raise SpaceMismatch("fiber data does not match the merge map")
    _check_fiber(nu, mu, a, params, merge.as_space_map())
    if params.p < ZERO:
        eta, lam = lift_merge_fiber(nu, a, mu, params.swapped(), merge)
        return lam, eta
    t = params.t
    n = merge.target.n
    nu_d = nu.density().values
    mu_d = mu.density().values
    a_d = a.density().values
    lam_w = list(mu_d[: n - 1])
    eta_w = list(a_d[: n - 1])
    lam_w.append(trop_min(mu_d[n - 1], residual(nu_d[n - 1], t)))
    lam_w.append(trop_min(mu_d[n - 1], residual(nu_d[n], t)))
    eta_w.append(trop_min(a_d[n - 1], nu_d[n - 1]))
    eta_w.append(trop_min(a_d[n - 1], nu_d[n]))
    lam = IdemMeasure.from_weights(merge.source, lam_w)
    eta = IdemMeasure.from_weights(merge.source, eta_w)
    f = merge.as_space_map()
    assert pushforward(f, lam) == mu
    assert pushforward(f, eta) == a
    assert combine(lam, eta, params) == nu
    return lam, eta


def _pull_bijection(f: SpaceMap, mu: IdemMeasure) -> IdemMeasure:
    dens = mu.density().values
    return IdemMeasure.from_weights(f.source, [dens[f(i)] for i in range(f.source.n)])


def lift_fiber_surjection(
    nu: IdemMeasure,
    mu: IdemMeasure,
    a: IdemMeasure,
    params: ConvexParams,
    f: SpaceMap,
) -> tuple[IdemMeasure, IdemMeasure]:
    """Fiber lift through an arbitrary surjection of finite spaces.

    The surjection is peeled into single merges, collapsing the
    highest-indexed duplicate pair first; each merge is handled by
    lift_merge_fiber and permutations are plain relabelings.
    """
    if not f.is_surjective:
        raise BadInput("fiber lifts need a surjective map")
    if nu.space != f.source or mu.space != f.target or a.space != f.target:
        raise SpaceMismatch("fiber data does not match the map")
    _check_fiber(nu, mu, a, params, f)
    m = f.source.n
    if m == f.target.n:
        lam = _pull_bijection(f, mu)
        eta = _pull_bijection(f, a)
        assert combine(lam, eta, params) == nu
        return lam, eta
    j = max(
        j
        for j in range(m)
        if any(f(i) == f(j) for i in range(j))
    )
    i = max(i for i in range(j) if f(i) == f(j))
    order = [k for k in range(m) if k not in (i, j)] + [i, j]
    src_p = FiniteSpace(m)
    sigma = SpaceMap(f.source, src_p, [order.index(k) for k in range(m)])
    mid = FiniteSpace(m - 1)
    g = MergeMap(src_p, mid)
    f_prime = SpaceMap(mid, f.target, [f(order[q]) for q in range(m - 1)])
    nu_p = pushforward(sigma, nu)
    nu_mid = pushforward(g.as_space_map(), nu_p)
    lam_mid, eta_mid = lift_fiber_surjection(nu_mid, mu, a, params, f_prime)
    lam_p, eta_p = lift_merge_fiber(nu_p, lam_mid, eta_mid, params, g)
    lam = _pull_bijection(sigma, lam_p)
    eta = _pull_bijection(sigma, eta_p)
    assert pushforward(f, lam) == mu
    assert pushforward(f, eta) == a
    assert combine(lam, eta, params) == nu
    return lam, eta


# -- convex combinations of points in intervals and boxes --------------------


def _check_in_interval(value: TropScalar, lo: TropScalar, hi: TropScalar, what: str):
    if not (lo <= value <= hi):
        raise OutsideValidityRegion(f"{what} {value} leaves [{lo}, {hi}]")


def lift_s_interval(
    x: TropScalar,
    y: TropScalar,
    params: ConvexParams,
    target: TropScalar,
    bounds: tuple[TropScalar, TropScalar],
) -> LiftWitness:
    """Lift the two-point convex combination on an interval [lo, hi].

    The returned parameters are always the input parameters; only the
    point pair moves.  The dominated side absorbs the target, and ties
    shift both components by the same amount.
    """
    lo, hi = bounds
    if not (lo.is_finite and hi.is_finite and lo <= hi):
        raise BadInput("interval bounds must be finite and ordered")
    for value, name in ((x, "first point"), (y, "second point"), (target, "target")):
        if not value.is_finite:
            raise BadInput(f"{name} must be finite")
        if not (lo <= value <= hi):
            raise BadInput(f"{name} {value} outside [{lo}, {hi}]")
    if params.p < ZERO:
        inner = lift_s_interval(y, x, params.swapped(), target, bounds)
        return LiftWitness(
            inner.lifted_second,
            inner.lifted_first,
            inner.params.swapped(),
            inner.case_tag + "/swapped",
        )
    alpha = params.t
    ax = odot(alpha, x)
    if ax < y:
        if not target > ax:
            raise OutsideValidityRegion(f"target {target} does not exceed the shifted first point {ax}")
        witness = LiftWitness(x, target, params, "s=second")
    elif ax > y:
        if not target > y:
            raise OutsideValidityRegion(f"target {target} does not exceed the second point {y}")
        moved = residual(target, alpha)
        _check_in_interval(moved, lo, hi, "lifted first point")
        witness = LiftWitness(moved, y, params, "s=first")
    else:
        moved = residual(target, alpha)
        _check_in_interval(moved, lo, hi, "lifted first point")
        witness = LiftWitness(moved, target, params, "s=tied")
    assert oplus(odot(params.t, witness.lifted_first), odot(params.p, witness.lifted_second)) == target
    return witness


def lift_s_box(
    x: TropVector,
    y: TropVector,
    params: ConvexParams,
    target: TropVector,
    box: Box,
) -> LiftWitness:
    """Coordinatewise interval lift sharing one parameter pair.

    The interval construction never moves the parameters, which is what
    makes the shared pair sound: every coordinate succeeds or the whole
    call is refused.
    """
    if not (x.dim == y.dim == target.dim == box.dim):
        raise BadInput("box lift inputs of mixed dimension")
    firsts, seconds, tags = [], [], []
    for j in range(box.dim):
        w = lift_s_interval(x[j], y[j], params, target[j], box.interval(j))
        assert w.params == params
        firsts.append(w.lifted_first)
        seconds.append(w.lifted_second)
        tags.append(f"{j}:{w.case_tag}")
    witness = LiftWitness(TropVector(firsts), TropVector(seconds), params, ";".join(tags))
    assert s_point(witness.lifted_first, witness.lifted_second, params) == target
    return witness


# -- barycenter lift ---------------------------------------------------------


class BoxHost:
    """Box compactum as a lift host: points, their combinations, box lifts."""

    def __init__(self, box: Box):
        self.box = box

    def bary(self, mu: IdemMeasure) -> TropVector:
        return barycenter(mu, host=self.box).point

    def lift_s(self, x, y, params, target) -> LiftWitness:
        return lift_s_box(x, y, params, target, self.box)

    def dirac(self, point) -> IdemMeasure:
        return IdemMeasure.dirac(point)

    def contains(self, point) -> bool:
        return isinstance(point, TropVector) and self.box.contains(point)


class MeasureHost:
    """Space of measures on a finite space as a lift host."""

    def __init__(self, space: FiniteSpace):
        self.space = space

    def bary(self, big: IdemMeasure) -> IdemMeasure:
        return barycenter_of_measures(big, self.space)

    def lift_s(self, x, y, params, target) -> LiftWitness:
        return lift_s_finite(x, y, params, target)

    def dirac(self, m) -> IdemMeasure:
        return IdemMeasure.dirac(m)

    def contains(self, m) -> bool:
        return isinstance(m, IdemMeasure) and m.space == self.space


def lift_beta(nu: IdemMeasure, target, host) -> IdemMeasure:
    """Lift the barycenter map: a measure near nu whose barycenter is target.

    Works by induction on the atom count.  A single atom lifts to the
    dirac at the target.  Otherwise the atom list is reordered so a
    zero-weight atom leads, the last atom is split off, the two-point
    combination is lifted through the host's oracle, and the rest
    recurses on the lifted intermediate target.
    """
    if not host.contains(target):
        raise BadInput(f"target {target!r} is not a point of the host")
    atoms = list(nu.atoms)
    if len(atoms) == 1:
        out = host.dirac(target)
        assert host.bary(out) == target
        return out
    z = next((k for k, (_, w) in enumerate(atoms) if w == ZERO), None)
    if z is None:
        raise NoZeroWeightPrefix("no zero-weight atom to lead the split")
    atoms = [atoms[z]] + atoms[:z] + atoms[z + 1 :]
    last_atom, last_weight = atoms[-1]
    nu1 = IdemMeasure(atoms[:-1], space=nu.space)
    y0 = host.bary(nu1)
    w = host.lift_s(y0, last_atom, ConvexParams(0, last_weight), target)
    nu1_lift = lift_beta(nu1, w.lifted_first, host)
    out = combine(nu1_lift, host.dirac(w.lifted_second), w.params)
    assert host.bary(out) == target
    return out


# -- independent brute-force oracles ----------------------------------------


def _finite_values(*scalars) -> list[TropScalar]:
    seen = []
    for s in scalars:
        if s.is_finite and s not in seen:
            seen.append(s)
    return seen


def _param_candidates(pool: Sequence[TropScalar], params: ConvexParams) -> list[ConvexParams]:
    taus = {ZERO, NEG_INF}
    for v in pool:
        if v <= ZERO:
            taus.add(v)
    for u in pool:
        for v in pool:
            r = residual(u, v)
            if r.is_finite and r <= ZERO:
                taus.add(r)
    cands = {ConvexParams(tau, 0) for tau in taus} | {ConvexParams(0, tau) for tau in taus}
    return sorted(cands, key=lambda c: (c.dist(params), c.t.to_float(), c.p.to_float()))


def brute_force_lift_s(
    first: IdemMeasure,
    second: IdemMeasure,
    params: ConvexParams,
    target: IdemMeasure,
    budget: int = 10**6,
    mode: str = "best",
) -> Optional[LiftWitness]:
    """Search exact witnesses of the finite combination lift on a
    value-adapted candidate grid.

    Candidate weights per atom are the obvious attainable values for the
    coordinate equation max(t'+l, p'+b) = target weight; candidate
    parameters come from the input values and their differences.  Returns
    the exact candidate nearest the inputs ("best"), the first exact one
    ("exists"), or None.
    """
    if first.space is None or first.space != second.space or first.space != target.space:
        raise SpaceMismatch("oracle inputs must share one finite space")
    space = first.space
    n = space.n
    lam = first.density().values
    bet = second.density().values
    alpha = target.density().values
    pool = _finite_values(*lam, *bet, *alpha, params.t, params.p)
    counter = {"viewed": 0}
    best: Optional[LiftWitness] = None
    best_dist = float("inf")

    for cand in _param_candidates(pool, params):
        per_coord = []
        feasible = True
        for i in range(n):
            options = []
            lefts = {lam[i], ZERO, NEG_INF}
            r = residual(alpha[i], cand.t)
            if not r.is_top and r <= ZERO:
                lefts.add(r)
            rights = {bet[i], ZERO, NEG_INF}
            r = residual(alpha[i], cand.p)
            if not r.is_top and r <= ZERO:
                rights.add(r)
            for l in lefts:
                for b in rights:
                    counter["viewed"] += 1
                    if counter["viewed"] > budget:
                        raise BudgetExceeded(f"oracle viewed more than {budget} candidates")
                    if oplus(odot(cand.t, l), odot(cand.p, b)) == alpha[i]:
                        options.append((l, b))
            if not options:
                feasible = False
                break
            options.sort(key=lambda lb: (rho(lb[0], lam[i]) + rho(lb[1], bet[i]), lb[0].to_float(), lb[1].to_float()))
            per_coord.append(options)
        if not feasible:
            continue
        can_zero_l = [any(l == ZERO for l, _ in opts) for opts in per_coord]
        can_zero_b = [any(b == ZERO for _, b in opts) for opts in per_coord]
        if not (any(can_zero_l) and any(can_zero_b)):
            continue
        found = _search_assignment(per_coord, can_zero_l, can_zero_b, counter, budget)
        if found is None:
            continue
        lam2, bet2 = found
        witness = LiftWitness(
            IdemMeasure.from_weights(space, lam2),
            IdemMeasure.from_weights(space, bet2),
            cand,
            "oracle",
        )
        assert combine(witness.lifted_first, witness.lifted_second, witness.params) == target
        if mode == "exists":
            return witness
        d = witness_distance(witness, first, second, params)
        if d < best_dist:
            best, best_dist = witness, d
    return best


def _search_assignment(per_coord, can_zero_l, can_zero_b, counter, budget):
    """Depth-first pick of one option per coordinate with both weight
    vectors forced to reach 0 somewhere."""
    n = len(per_coord)

    def rec(i, chosen, has_l, has_b):
        counter["viewed"] += 1
        if counter["viewed"] > budget:
            raise BudgetExceeded(f"oracle viewed more than {budget} candidates")
        if i == n:
            return list(chosen) if has_l and has_b else None
        if not has_l and not any(can_zero_l[i:]):
            return None
        if not has_b and not any(can_zero_b[i:]):
            return None
        for l, b in per_coord[i]:
            chosen.append((l, b))
            out = rec(i + 1, chosen, has_l or l == ZERO, has_b or b == ZERO)
            chosen.pop()
            if out is not None:
                return out
        return None

    picked = rec(0, [], False, False)
    if picked is None:
        return None
    return [l for l, _ in picked], [b for _, b in picked]


def _lattice(lo: TropScalar, hi: TropScalar, steps: int) -> list[TropScalar]:
    span = hi.q - lo.q
    return [TropScalar(lo.q + span * k / steps) for k in range(steps + 1)]


def brute_force_lift_interval(
    x: TropScalar,
    y: TropScalar,
    params: ConvexParams,
    target: TropScalar,
    bounds: tuple[TropScalar, TropScalar],
    grid_steps: int = 16,
    budget: int = 10**6,
    mode: str = "best",
) -> Optional[LiftWitness]:
    """Grid search for exact interval-lift witnesses."""
    lo, hi = bounds
    pool = _finite_values(x, y, target, params.t, params.p, lo, hi)
    cands = _param_candidates(pool, params)
    values = set(_lattice(lo, hi, grid_steps)) | {x, y, target}
    for tau in (params.t, params.p):
        r = residual(target, tau)
        if r.is_finite and lo <= r <= hi:
            values.add(r)
    values = sorted(values, key=lambda v: (rho(v, x) + rho(v, y), v.to_float()))
    viewed = 0
    best = None
    best_dist = float("inf")
    for cand in cands:
        for xv in values:
            for yv in values:
                viewed += 1
                if viewed > budget:
                    raise BudgetExceeded(f"oracle viewed more than {budget} candidates")
                if oplus(odot(cand.t, xv), odot(cand.p, yv)) != target:
                    continue
                witness = LiftWitness(xv, yv, cand, "oracle")
                if mode == "exists":
                    return witness
                d = max(rho(xv, x), rho(yv, y), cand.dist(params))
                if d < best_dist:
                    best, best_dist = witness, d
    return best


def brute_force_lift_box(
    x: TropVector,
    y: TropVector,
    params: ConvexParams,
    target: TropVector,
    box: Box,
    grid_steps: int = 8,
    budget: int = 10**6,
    mode: str = "best",
) -> Optional[LiftWitness]:
    """Grid search for exact box-lift witnesses with one shared parameter
    pair; coordinates decouple once the pair is fixed."""
    pool = _finite_values(*x.coords, *y.coords, *target.coords, params.t, params.p)
    viewed = 0
    best = None
    best_dist = float("inf")
    for cand in _param_candidates(pool, params):
        firsts, seconds = [], []
        total = 0.0
        feasible = True
        for j in range(box.dim):
            lo, hi = box.interval(j)
            values = set(_lattice(lo, hi, grid_steps)) | {x[j], y[j], target[j]}
            for tau in (cand.t, cand.p):
                r = residual(target[j], tau)
                if r.is_finite and lo <= r <= hi:
                    values.add(r)
            options = []
            for xv in values:
                for yv in values:
                    viewed += 1
                    if viewed > budget:
                        raise BudgetExceeded(f"oracle viewed more than {budget} candidates")
                    if oplus(odot(cand.t, xv), odot(cand.p, yv)) == target[j]:
                        options.append((max(rho(xv, x[j]), rho(yv, y[j])), xv.to_float(), yv.to_float(), xv, yv))
            if not options:
                feasible = False
                break
            options.sort(key=lambda o: o[:3])
            d, _, _, xv, yv = options[0]
            total = max(total, d)
            firsts.append(xv)
            seconds.append(yv)
        if not feasible:
            continue
        witness = LiftWitness(TropVector(firsts), TropVector(seconds), cand, "oracle")
        assert s_point(witness.lifted_first, witness.lifted_second, cand) == target
        if mode == "exists":
            return witness
        d = max(total, cand.dist(params))
        if d < best_dist:
            best, best_dist = witness, d
    return best


def brute_force_lift_beta(
    nu: IdemMeasure,
    target: TropVector,
    box: Box,
    coord_steps: int = 4,
    weight_steps: int = 4,
    budget: int = 10**6,
    mode: str = "best",
) -> Optional[IdemMeasure]:
    """Exhaustive search for measures on a coordinate grid whose
    barycenter hits the target exactly."""
    weights = [TropScalar(Fraction(-2 * k, weight_steps)) for k in range(weight_steps + 1)]
    pools = []
    for j in range(box.dim):
        lo, hi = box.interval(j)
        vals = set(_lattice(lo, hi, coord_steps)) | {target[j]}
        for w in weights:
            r = residual(target[j], w)
            if r.is_finite and lo <= r <= hi:
                vals.add(r)
        pools.append(sorted(vals, key=lambda v: v.to_float()))
    points = [TropVector(c) for c in itertools.product(*pools)]
    atom_cands = [(p, w) for p in points for w in weights]
    k_max = nu.atom_count
    viewed = 0
    best = None
    best_dist = float("inf")
    for k in range(1, k_max + 1):
        for combo in itertools.combinations(atom_cands, k):
            viewed += 1
            if viewed > budget:
                raise BudgetExceeded(f"oracle viewed more than {budget} candidates")
            if not any(w == ZERO for _, w in combo):
                continue
            coords_ok = True
            for j in range(box.dim):
                if oplus_all(odot(w, p[j]) for p, w in combo) != target[j]:
                    coords_ok = False
                    break
            if not coords_ok:
                continue
            cand = IdemMeasure(list(combo))
            if mode == "exists":
                return cand
            d = measure_dist(cand, nu)
            if d < best_dist:
                best, best_dist = cand, d
    return best
