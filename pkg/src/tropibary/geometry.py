"""Max-plus convex geometry: boxes, finitely generated hulls, extremal
points, affinity checking, and the two replayable non-openness
certificates.

A hull here is always normalized: memberships are combinations
``oplus_i lam_i odot v_i`` whose coefficient maximum is 0.  Membership is
decided by residuation: the largest admissible coefficient of each
generator is ``min(0, min_j (x_j - v_ij))``, and the point belongs to the
hull iff those coefficients reconstruct it and their maximum is 0.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .barycenter import barycenter_point
from .core import (
    NEG_INF,
    ZERO,
    ConvexParams,
    TropScalar,
    TropVector,
    odot,
    oplus_all,
    residual,
    rho,
    s_point,
    scalar,
    trop_min,
)
from .errors import BadInput, DimensionMismatch, InfeasibleBarycenter, TropibaryError
from .measures import FiniteSpace, FunctionTable, IdemMeasure, PointFunction, combine


class Box:
    """Axis box [low_1, high_1] x ... x [low_d, high_d] with finite bounds."""

    __slots__ = ("low", "high")

    def __init__(self, low: TropVector, high: TropVector):
        if low.dim != high.dim:
            raise DimensionMismatch("box bounds of different dimension")
        if not (low.is_finite and high.is_finite):
            raise BadInput("box bounds must be finite")
        if not low.leq(high):
            raise BadInput("box lower bound exceeds upper bound")
        self.low = low
        self.high = high

    @property
    def dim(self) -> int:
        return self.low.dim

    def contains(self, p: TropVector) -> bool:
        if p.dim != self.dim:
            raise DimensionMismatch("point dimension does not match the box")
        return self.low.leq(p) and p.leq(self.high)

    def interval(self, j: int) -> tuple[TropScalar, TropScalar]:
        return (self.low[j], self.high[j])

    def corners_polytope(self) -> "TropPolytope":
        """The box as a finitely generated hull (its corner points)."""
        corners = [[]]
        for j in range(self.dim):
            corners = [c + [v] for c in corners for v in (self.low[j], self.high[j])]
        return TropPolytope([TropVector(c) for c in corners])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Box):
            return NotImplemented
        return self.low == other.low and self.high == other.high

    def __repr__(self) -> str:
        return f"Box({self.low!r}, {self.high!r})"


class TropPolytope:
    """Hull of finitely many finite points under normalized combinations."""

    __slots__ = ("generators",)

    def __init__(self, generators: Iterable[TropVector]):
        gens = []
        seen = set()
        for g in generators:
            if not g.is_finite:
                raise BadInput("generators must have finite coordinates")
            if g not in seen:
                gens.append(g)
                seen.add(g)
        if not gens:
            raise BadInput("a polytope needs at least one generator")
        dims = {g.dim for g in gens}
        if len(dims) != 1:
            raise DimensionMismatch("generators of mixed dimension")
        self.generators = tuple(gens)

    @property
    def dim(self) -> int:
        return self.generators[0].dim

    def combination(self, coeffs: Sequence[TropScalar]) -> TropVector:
        if len(coeffs) != len(self.generators):
            raise BadInput("one coefficient per generator")
        out = self.generators[0].shift(coeffs[0])
        for g, c in zip(self.generators[1:], coeffs[1:]):
            out = out.join(g.shift(c))
        return out

    def contains(self, x: TropVector) -> bool:
        return hull_membership(self, x) is not None

    def __eq__(self, other) -> bool:
        if not isinstance(other, TropPolytope):
            return NotImplemented
        return set(self.generators) == set(other.generators)

    def __repr__(self) -> str:
        return f"TropPolytope({len(self.generators)} generators, dim {self.dim})"


def hull_membership(poly: TropPolytope, x: TropVector) -> Optional[tuple[TropScalar, ...]]:
    """Residuation membership test.

    Returns the residual coefficients when x is in the hull, else None.
    Coefficients are clamped to <= 0 so that the reconstruction is a
    normalized combination; without the clamp, points dominating a
    generator would be misclassified.
    """
    if x.dim != poly.dim:
        raise DimensionMismatch("point dimension does not match the polytope")
    coeffs = []
    for g in poly.generators:
        best = ZERO
        for xj, gj in zip(x.coords, g.coords):
            r = residual(xj, gj)
            if r < best:
                best = r
        coeffs.append(best)
    if oplus_all(coeffs) != ZERO:
        return None
    if poly.combination(coeffs) != x:
        return None
    return tuple(coeffs)


def extremal_points(
    poly: TropPolytope,
    samples: int = 0,
    seed: int = 0,
) -> tuple[TropVector, ...]:
    """Extremal points of the hull: the irredundant generators.

    A generator is dropped when it lies in the hull of the remaining
    ones.  With samples > 0, every survivor is additionally tested
    against the decomposition definition on sampled combinations; a
    refutation would indicate an internal inconsistency and raises.
    """
    survivors = list(poly.generators)
    k = 0
    while k < len(survivors):
        if len(survivors) == 1:
            break
        rest = survivors[:k] + survivors[k + 1 :]
        if hull_membership(TropPolytope(rest), survivors[k]) is not None:
            survivors.pop(k)
        else:
            k += 1
    if samples > 0:
        rng = random.Random(seed)
        grid = [Fraction(n, 8) for n in range(-16, 1)]
        sub = TropPolytope(survivors)
        for v in survivors:
            for _ in range(samples):
                y = sub.combination(_random_coeffs(sub, rng, grid))
                z = sub.combination(_random_coeffs(sub, rng, grid))
                t = TropScalar(rng.choice(grid)) if rng.random() < 0.9 else NEG_INF
                p = ZERO if t < ZERO or rng.random() < 0.5 else TropScalar(rng.choice(grid))
                cand = s_point(y, z, ConvexParams(t, p))
                if cand == v and y != v and z != v:
                    raise TropibaryError(f"extremality of {v!r} refuted by a sampled decomposition")
    return tuple(survivors)


def _random_coeffs(poly: TropPolytope, rng: random.Random, grid) -> list[TropScalar]:
    n = len(poly.generators)
    coeffs = [TropScalar(rng.choice(grid)) if rng.random() < 0.8 else NEG_INF for _ in range(n)]
    coeffs[rng.randrange(n)] = ZERO
    return coeffs


@dataclass(frozen=True)
class AffineCheckResult:
    ok: bool
    counterexample: Optional[tuple] = None


def affine_check(
    f: Callable[[TropVector], TropVector],
    points: Sequence[TropVector],
    samples: int = 100,
    seed: int = 0,
) -> AffineCheckResult:
    """Sampled check that f commutes with max-plus convex combinations."""
    rng = random.Random(seed)
    grid = [Fraction(n, 8) for n in range(-16, 1)]
    for _ in range(samples):
        a = rng.choice(points)
        b = rng.choice(points)
        t = TropScalar(rng.choice(grid)) if rng.random() < 0.9 else NEG_INF
        p = ZERO if t < ZERO or rng.random() < 0.5 else TropScalar(rng.choice(grid))
        params = ConvexParams(t, p)
        lhs = f(s_point(a, b, params))
        rhs = s_point(f(a), f(b), params)
        if lhs != rhs:
            return AffineCheckResult(False, (a, b, params, lhs, rhs))
    return AffineCheckResult(True, None)


# -- replayable certificates -------------------------------------------------


@dataclass
class Certificate:
    """Machine-checkable record of a non-openness claim.

    Everything needed to re-verify is stored: the claim id, the seeded
    sampling parameters, derived exact facts, a digest of the sample
    stream, and a handful of explicit exhibit samples.  recheck() reruns
    the construction from the stored seed and compares.
    """

    claim: str
    params: dict
    data: dict
    verdict: bool

    def to_json_dict(self) -> dict:
        return {
            "claim": self.claim,
            "params": self.params,
            "data": self.data,
            "verdict": self.verdict,
        }

    @staticmethod
    def from_json_dict(doc: dict) -> "Certificate":
        return Certificate(doc["claim"], doc["params"], doc["data"], doc["verdict"])

    def recheck(self) -> bool:
        fresh = _REBUILDERS[self.claim](**self.params)
        return (
            fresh.verdict == self.verdict
            and fresh.data["digest"] == self.data["digest"]
            and fresh.data == self.data
        )


def id_space() -> FiniteSpace:
    """Two-point space embedded at coordinates 0 and 1."""
    return FiniteSpace(2, labels=("0", "1"), points=(TropVector([0]), TropVector([1])))


def nu_t(t, space: Optional[FiniteSpace] = None) -> IdemMeasure:
    """The path t odot dirac_0 oplus dirac_1 through the measure space."""
    return IdemMeasure.from_weights(space or id_space(), [scalar(t), ZERO])


def separating_table(space: FiniteSpace) -> FunctionTable:
    return FunctionTable(space, [0, 1])


_ID_TAIL_GRID = [Fraction(-k, 16) for k in range(0, 65)]  # 0 .. -4 by 1/16


def certify_id_oplus_not_open(i: int, samples: int = 10000, seed: int = 7) -> Certificate:
    """Obstruction certificate for the pairwise-max map on two-point measures.

    Targets nu_{-1/i} approach nu_0 = dirac_0 oplus dirac_1, yet every
    split nu_{-1/i} = alpha oplus beta forces alpha's weight at atom 1 to
    be 0, so alpha evaluates the separating table to exactly 1 and stays
    outside the neighborhood |mu(phi)| < 1/2 of dirac_0.
    """
    if i < 1:
        raise BadInput("the sequence index must be >= 1")
    space = id_space()
    phi = separating_table(space)
    eps = Fraction(-1, i)
    target = nu_t(eps, space)
    params = ConvexParams(0, 0)
    rng = random.Random(seed)
    digest = hashlib.sha256()
    exhibits = []
    obstructed = 0
    for k in range(samples):
        which = rng.randrange(3)
        a0 = eps if which in (0, 2) else _below(eps, rng)
        b0 = eps if which in (1, 2) else _below(eps, rng)
        alpha = IdemMeasure.from_weights(space, [a0, ZERO])
        beta = IdemMeasure.from_weights(space, [b0, ZERO])
        if combine(alpha, beta, params) != target:
            raise TropibaryError("sampled split failed to recombine")
        val = alpha(phi)
        if val != TropScalar(1):
            raise TropibaryError(f"split evaluated phi to {val}, expected 1")
        obstructed += 1
        digest.update(f"{a0}|{b0};".encode())
        if len(exhibits) < 8:
            exhibits.append({"alpha0": str(a0), "beta0": str(b0), "alpha_phi": str(val)})
    limit_ok = (
        combine(IdemMeasure.dirac(0, space), IdemMeasure.dirac(1, space), params) == nu_t(0, space)
        and abs(IdemMeasure.dirac(0, space)(phi).q) < Fraction(1, 2)
    )
    data = {
        "target_weights": [str(eps), "0"],
        "phi": ["0", "1"],
        "neighborhood_bound": "1/2",
        "alpha_phi_forced": "1",
        "obstructed": obstructed,
        "limit_split_inside": limit_ok,
        "exhibits": exhibits,
        "digest": digest.hexdigest(),
    }
    verdict = obstructed == samples and limit_ok
    return Certificate(
        claim="id-oplus-not-open",
        params={"i": i, "samples": samples, "seed": seed},
        data=data,
        verdict=verdict,
    )


def _below(bound: Fraction, rng: random.Random) -> TropScalar:
    """Random weight strictly below the bound, occasionally -inf."""
    if rng.random() < 0.15:
        return NEG_INF
    return TropScalar(bound + rng.choice(_ID_TAIL_GRID[1:]))


def y_polytope() -> TropPolytope:
    """Hook-shaped planar hull with a diagonal spike into the corner."""
    return TropPolytope([TropVector([-2, -1]), TropVector([-1, -2]), TropVector([0, 0])])


def y_pieces() -> dict:
    """Parametric description of the three pieces of the hook."""
    return {
        "horizontal": "x in [-2,-1], y = -1",
        "vertical": "x = -1, y in [-2,-1]",
        "diagonal": "x = y in [-1,0]",
    }


def on_y_pieces(p: TropVector) -> bool:
    x, y = p.coords
    m2, m1 = TropScalar(-2), TropScalar(-1)
    if y == m1 and m2 <= x <= m1:
        return True
    if x == m1 and m2 <= y <= m1:
        return True
    return x == y and m1 <= x <= ZERO


def phi_min() -> PointFunction:
    return PointFunction("min[0,1]", lambda p: trop_min(p[0], p[1]))


_Y_PARAM_GRID = [Fraction(k, 16) for k in range(0, 17)]  # 0 .. 1 by 1/16


def _sample_y_point(rng: random.Random) -> TropVector:
    u = rng.choice(_Y_PARAM_GRID)
    piece = rng.randrange(3)
    if piece == 0:
        return TropVector([Fraction(-1) - u, Fraction(-1)])
    if piece == 1:
        return TropVector([Fraction(-1), Fraction(-1) - u])
    return TropVector([Fraction(-1) + u, Fraction(-1) + u])


def certify_y_beta_not_open(i: int, samples: int = 10000, seed: int = 7) -> Certificate:
    """Obstruction certificate for the barycenter map on the hook hull.

    The barycenter of nu = dirac_(-2,-1) oplus dirac_(-1,-2) is (-1,-1);
    the diagonal points c_i = (-1+1/i, -1+1/i) approach it.  Any sampled
    measure with barycenter c_i must put weight >= -1+1/i on a diagonal
    atom, so it evaluates min(x, y) to at least -1+1/i while nu evaluates
    it to -2: a gap bounded below by rho(-1+1/i, -2) > 0.
    """
    if i < 1:
        raise BadInput("the sequence index must be >= 1")
    hull = y_polytope()
    a = TropVector([-2, -1])
    b = TropVector([-1, -2])
    nu = IdemMeasure([(a, ZERO), (b, ZERO)])
    test = phi_min()
    c = Fraction(-1) + Fraction(1, i)
    c_i = TropVector([c, c])
    if hull_membership(hull, c_i) is None:
        raise TropibaryError("diagonal target fell outside the hull")
    center = barycenter_point(nu)
    if center != TropVector([-1, -1]):
        raise TropibaryError(f"barycenter of nu is {center!r}, expected (-1,-1)")
    nu_val = nu(test)
    if nu_val != TropScalar(-2):
        raise TropibaryError(f"nu evaluates the min table to {nu_val}, expected -2")
    gap = rho(TropScalar(c), TropScalar(-2))
    rng = random.Random(seed)
    digest = hashlib.sha256()
    exhibits = []
    feasible = 0
    infeasible = 0
    attempts = 0
    cs = TropScalar(c)
    normalizer = TropVector([-1, -1])
    while feasible < samples:
        attempts += 1
        if attempts > samples * 20:
            raise InfeasibleBarycenter(f"sampling could not keep hitting {c_i!r}")
        pts = [normalizer] + [_sample_y_point(rng) for _ in range(rng.randrange(4))]
        if rng.random() < 0.8:
            v = c + rng.choice(_Y_PARAM_GRID) * (Fraction(0) - c) if c != 0 else Fraction(0)
            pts.append(TropVector([v, v]))
        caps = []
        for p in pts:
            cap = trop_min(trop_min(residual(cs, p[0]), residual(cs, p[1])), ZERO)
            caps.append(cap)
        attain = [
            k
            for k, p in enumerate(pts)
            if odot(caps[k], p[0]) == cs and odot(caps[k], p[1]) == cs
        ]
        if not attain:
            infeasible += 1
            continue
        keep = {rng.choice(attain), 0}
        weights = []
        for k in range(len(pts)):
            if k in keep:
                weights.append(caps[k])
            elif rng.random() < 0.2:
                weights.append(NEG_INF)
            else:
                weights.append(odot(caps[k], TropScalar(-rng.choice(_Y_PARAM_GRID))))
        mu = IdemMeasure([(p, w) for p, w in zip(pts, weights) if not w.is_bottom])
        if barycenter_point(mu) != c_i:
            raise TropibaryError("constructed sample missed the target barycenter")
        val = mu(test)
        if not (val >= cs):
            raise TropibaryError(f"min-table value {val} fell below {cs}")
        for p, w in mu.atoms:
            if odot(w, p[0]) == cs:
                if p[0] != p[1] or not (w >= cs):
                    raise TropibaryError("a coordinate witness left the diagonal")
        if rho(val, TropScalar(-2)) < gap:
            raise TropibaryError("sample closer to nu than the certified gap")
        feasible += 1
        digest.update(repr(mu.atoms).encode())
        if len(exhibits) < 5:
            exhibits.append(
                {
                    "atoms": [[str(p[0]), str(p[1]), str(w)] for p, w in mu.atoms],
                    "min_value": str(val),
                }
            )
    ext = set(extremal_points(hull))
    ext_ok = ext == {a, b, TropVector([0, 0])}
    data = {
        "target_point": [str(c), str(c)],
        "nu_min_value": "-2",
        "min_value_lower_bound": str(c),
        "gap": gap,
        "feasible": feasible,
        "infeasible_rejected": infeasible,
        "extremal_points_ok": ext_ok,
        "exhibits": exhibits,
        "digest": digest.hexdigest(),
    }
    verdict = feasible == samples and ext_ok
    return Certificate(
        claim="y-beta-not-open",
        params={"i": i, "samples": samples, "seed": seed},
        data=data,
        verdict=verdict,
    )


_REBUILDERS = {
    "id-oplus-not-open": certify_id_oplus_not_open,
    "y-beta-not-open": certify_y_beta_not_open,
}


# -- rendering ---------------------------------------------------------------


def _segment_polyline(u: TropVector, v: TropVector) -> list[TropVector]:
    """Polyline through the kinks of the tropical segment from v to u.

    The segment is swept in two halves: v.join(u.shift(t)) for t rising
    to 0, then u.join(v.shift(p)) for p falling back to -inf.
    """
    rising = sorted({residual(v[j], u[j]) for j in range(u.dim)} | {ZERO})
    pts = [v]
    for t in rising:
        if t <= ZERO:
            pts.append(v.join(u.shift(t)))
    falling = sorted({residual(u[j], v[j]) for j in range(u.dim)} | {ZERO}, reverse=True)
    for p in falling:
        if p <= ZERO:
            pts.append(u.join(v.shift(p)))
    pts.append(u)
    return pts


def render_polytope_svg(
    poly: TropPolytope,
    path: str,
    extremal: Optional[Sequence[TropVector]] = None,
    extra_points: Optional[Sequence[TropVector]] = None,
) -> None:
    """Write a small SVG sketch of a planar hull: pairwise tropical
    segments between generators, generators as dots, extremals ringed."""
    if poly.dim != 2:
        raise BadInput("SVG rendering is implemented for dimension 2 only")
    pts = list(poly.generators) + list(extra_points or [])
    xs = [p[0].to_float() for p in pts]
    ys = [p[1].to_float() for p in pts]
    pad = 0.3
    x0, x1 = min(xs) - pad, max(xs) + pad
    y0, y1 = min(ys) - pad, max(ys) + pad
    size = 420.0
    sx = size / (x1 - x0)
    sy = size / (y1 - y0)

    def at(p: TropVector) -> tuple[float, float]:
        return ((p[0].to_float() - x0) * sx, size - (p[1].to_float() - y0) * sy)

    rows = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size:.0f}" height="{size:.0f}" '
        f'viewBox="0 0 {size:.0f} {size:.0f}">',
        f'<rect width="{size:.0f}" height="{size:.0f}" fill="white"/>',
    ]
    gens = poly.generators
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            line = _segment_polyline(gens[i], gens[j])
            coords = " ".join(f"{x:.1f},{y:.1f}" for x, y in (at(p) for p in line))
            rows.append(f'<polyline points="{coords}" fill="none" stroke="#336" stroke-width="2"/>')
    ext = set(extremal or ())
    for g in gens:
        x, y = at(g)
        rows.append(f'<circle cx="{x:.1f}" cy="{y:.1f}" r="5" fill="#c33"/>')
        if g in ext:
            rows.append(
                f'<circle cx="{x:.1f}" cy="{y:.1f}" r="9" fill="none" stroke="#c33" stroke-width="2"/>'
            )
    for p in extra_points or ():
        x, y = at(p)
        rows.append(f'<circle cx="{x:.1f}" cy="{y:.1f}" r="4" fill="#383"/>')
    rows.append("</svg>")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(rows))
