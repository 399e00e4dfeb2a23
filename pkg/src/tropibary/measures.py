"""Finite-support idempotent measures and the operations that act on them.

A measure is a weight assignment over atoms with every weight <= 0 and
maximum weight exactly 0.  Atoms are either indices of a `FiniteSpace`,
points (`TropVector`), or measures themselves (for spaces of measures).
Measures are kept in canonical form: duplicate atoms merged by max,
-inf weights dropped, atoms sorted deterministically.

The functional view is `mu(phi)` = max over atoms of weight + phi(atom),
which satisfies the three defining laws checked in the test suite:
constants map to themselves, shifts factor out, and max is preserved.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence, Union

from .core import (
    NEG_INF,
    ZERO,
    ConvexParams,
    TropScalar,
    TropVector,
    odot,
    oplus,
    oplus_all,
    rho,
    scalar,
)
from .errors import (
    BadInput,
    DimensionMismatch,
    EmptyTestFamily,
    NotNormalized,
    SpaceMismatch,
)


class FiniteSpace:
    """Finite compactum {0, ..., n-1}, optionally embedded in R_max^d."""

    __slots__ = ("n", "labels", "points")

    def __init__(
        self,
        n: int,
        labels: Optional[Sequence[str]] = None,
        points: Optional[Sequence[TropVector]] = None,
    ):
        if n < 1:
            raise BadInput("a finite space needs at least one point")
        self.n = n
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
        if len(self.labels) != n or len(set(self.labels)) != n:
            raise BadInput("labels must be distinct and match the space size")
        if points is not None:
            pts = tuple(points)
            if len(pts) != n:
                raise BadInput("embedding must place every point")
            dims = {p.dim for p in pts}
            if len(dims) != 1:
                raise DimensionMismatch("embedded points of mixed dimension")
            if len(set(pts)) != n:
                raise BadInput("embedded points must be distinct")
            for p in pts:
                if not p.is_finite:
                    raise BadInput("embedded points must have finite coordinates")
            self.points = pts
        else:
            self.points = None

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise BadInput(f"unknown label {label!r}") from None

    def _key(self):
        return (self.n, self.labels, self.points)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteSpace):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"FiniteSpace({self.n}, labels={list(self.labels)!r})"


def _finite_q(v: Union[int, str, Fraction, TropScalar]) -> Fraction:
    """Coerce to a finite rational; -inf and floats are refused."""
    if isinstance(v, TropScalar):
        if not v.is_finite:
            raise BadInput(f"{v} is not finite")
        return v.q
    if isinstance(v, float) or isinstance(v, bool):
        raise BadInput(f"refusing inexact value {v!r}")
    try:
        return Fraction(v)
    except (ValueError, TypeError, ZeroDivisionError):
        raise BadInput(f"{v!r} is not a finite rational") from None


class FunctionTable:
    """Rational-valued function on a finite space, used as a test functional.

    Values are strictly finite: tables stand in for continuous functions,
    which never take -inf.
    """

    __slots__ = ("space", "values")

    def __init__(self, space: FiniteSpace, values: Sequence[Union[int, str, Fraction]]):
        self.space = space
        vals = tuple(_finite_q(v) for v in values)
        if len(vals) != space.n:
            raise BadInput("table length must match the space size")
        self.values = vals

    def __call__(self, i: int) -> TropScalar:
        return TropScalar(self.values[i])

    def shift(self, c: Union[int, str, Fraction, TropScalar]) -> "FunctionTable":
        c = _finite_q(c)
        return FunctionTable(self.space, [v + c for v in self.values])

    def join(self, other: "FunctionTable") -> "FunctionTable":
        if self.space != other.space:
            raise SpaceMismatch("tables on different spaces")
        return FunctionTable(self.space, [max(a, b) for a, b in zip(self.values, other.values)])

    @staticmethod
    def constant(space: FiniteSpace, c: Union[int, str, Fraction, TropScalar]) -> "FunctionTable":
        return FunctionTable(space, [_finite_q(c)] * space.n)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FunctionTable):
            return NotImplemented
        return self.space == other.space and self.values == other.values

    def __repr__(self) -> str:
        return f"FunctionTable({[str(v) for v in self.values]})"


class DensityTable:
    """Dense weight vector of a measure on a finite space."""

    __slots__ = ("space", "values")

    def __init__(self, space: FiniteSpace, values: Sequence[TropScalar]):
        vals = tuple(scalar(v) for v in values)
        if len(vals) != space.n:
            raise BadInput("density length must match the space size")
        for v in vals:
            if v.is_top:
                raise BadInput("+inf cannot appear in a density")
            if v > ZERO:
                raise NotNormalized(f"weight {v} is above 0")
        if oplus_all(vals) != ZERO:
            raise NotNormalized(f"max weight is {oplus_all(vals)}, expected 0")
        self.space = space
        self.values = vals

    def __eq__(self, other) -> bool:
        if not isinstance(other, DensityTable):
            return NotImplemented
        return self.space == other.space and self.values == other.values

    def __repr__(self) -> str:
        return f"DensityTable({[str(v) for v in self.values]})"


Atom = Union[int, TropVector, "IdemMeasure"]


def _atom_key(atom: Atom):
    """Deterministic sort key across the three atom kinds."""
    if isinstance(atom, int):
        return (0, atom)
    if isinstance(atom, TropVector):
        return (1, tuple(c._key() for c in atom.coords))
    if isinstance(atom, IdemMeasure):
        return (2, tuple((_atom_key(a), w._key()) for a, w in atom.atoms))
    raise BadInput(f"unsupported atom {atom!r}")


class IdemMeasure:
    """Canonical finite-support idempotent measure."""

    __slots__ = ("space", "atoms")

    def __init__(
        self,
        pairs: Iterable[tuple[Atom, TropScalar]],
        space: Optional[FiniteSpace] = None,
        renormalize: bool = False,
    ):
        merged: dict = {}
        for atom, weight in pairs:
            weight = scalar(weight)
            if weight.is_top:
                raise BadInput("+inf cannot be a weight")
            if isinstance(atom, int):
                if space is None:
                    raise BadInput("index atoms need a space")
                if not 0 <= atom < space.n:
                    raise BadInput(f"atom index {atom} outside space of size {space.n}")
            elif isinstance(atom, TropVector):
                if atom.is_finite is False:
                    raise BadInput("point atoms must have finite coordinates")
            elif not isinstance(atom, IdemMeasure):
                raise BadInput(f"unsupported atom {atom!r}")
            if atom in merged:
                merged[atom] = oplus(merged[atom], weight)
            else:
                merged[atom] = weight
        if len({_atom_key(a)[0] for a in merged}) > 1:
            raise BadInput("atoms of mixed kinds in one measure")
        top = oplus_all(merged.values()) if merged else NEG_INF
        if top.is_bottom:
            raise NotNormalized("a measure needs at least one atom above -inf")
        if top != ZERO:
            if not renormalize:
                raise NotNormalized(f"max weight is {top}, expected 0")
            merged = {a: odot(w, scalar(-top.q)) for a, w in merged.items()}
        kept = [(a, w) for a, w in merged.items() if not w.is_bottom]
        kept.sort(key=lambda aw: _atom_key(aw[0]))
        self.atoms = tuple(kept)
        self.space = space
        if space is not None and not all(isinstance(a, int) for a, _ in self.atoms):
            raise BadInput("measures on a finite space must use index atoms")

    # -- constructors -------------------------------------------------

    @staticmethod
    def dirac(atom: Atom, space: Optional[FiniteSpace] = None) -> "IdemMeasure":
        return IdemMeasure([(atom, ZERO)], space=space)

    @staticmethod
    def from_weights(
        space: FiniteSpace,
        weights: Sequence[Union[int, str, Fraction, TropScalar]],
        renormalize: bool = False,
    ) -> "IdemMeasure":
        if len(weights) != space.n:
            raise BadInput("weight vector length must match the space size")
        pairs = [(i, scalar(w)) for i, w in enumerate(weights)]
        return IdemMeasure(pairs, space=space, renormalize=renormalize)

    # -- views ---------------------------------------------------------

    def weight_of(self, atom: Atom) -> TropScalar:
        for a, w in self.atoms:
            if a == atom:
                return w
        return NEG_INF

    def density(self) -> DensityTable:
        if self.space is None:
            raise BadInput("densities exist only over a finite space")
        vals = [NEG_INF] * self.space.n
        for a, w in self.atoms:
            vals[a] = w
        return DensityTable(self.space, vals)

    def support(self) -> tuple:
        return tuple(a for a, _ in self.atoms)

    @property
    def atom_count(self) -> int:
        return len(self.atoms)

    # -- functional view -----------------------------------------------

    def __call__(self, phi) -> TropScalar:
        """Evaluate the measure as a functional on phi.

        phi is a FunctionTable over the same space, or any callable on
        atoms returning a TropScalar.
        """
        if isinstance(phi, FunctionTable):
            if self.space is None or phi.space != self.space:
                raise SpaceMismatch("table and measure live on different spaces")
        return oplus_all(odot(w, phi(a)) for a, w in self.atoms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IdemMeasure):
            return NotImplemented
        return self.space == other.space and self.atoms == other.atoms

    def __hash__(self) -> int:
        return hash((self.space, tuple((_atom_key(a), w._key()) for a, w in self.atoms)))

    def __repr__(self) -> str:
        inner = ", ".join(f"{a!r}: {w}" for a, w in self.atoms)
        return f"IdemMeasure({{{inner}}})"


def eval_measure(mu: IdemMeasure, phi) -> TropScalar:
    """Function form of mu(phi)."""
    return mu(phi)


def combine(first: IdemMeasure, second: IdemMeasure, params: ConvexParams) -> IdemMeasure:
    """Max-plus convex combination t odot first oplus p odot second."""
    if first.space != second.space:
        raise SpaceMismatch("cannot combine measures on different spaces")
    pairs = [(a, odot(params.t, w)) for a, w in first.atoms]
    pairs += [(a, odot(params.p, w)) for a, w in second.atoms]
    return IdemMeasure(pairs, space=first.space)


class SpaceMap:
    """Total map between finite spaces, given by a target-index table."""

    __slots__ = ("source", "target", "table")

    def __init__(self, source: FiniteSpace, target: FiniteSpace, table: Sequence[int]):
        tbl = tuple(table)
        if len(tbl) != source.n:
            raise BadInput("map table must cover the whole source")
        for j in tbl:
            if not 0 <= j < target.n:
                raise BadInput(f"map value {j} outside target of size {target.n}")
        self.source = source
        self.target = target
        self.table = tbl

    def __call__(self, i: int) -> int:
        return self.table[i]

    @property
    def is_surjective(self) -> bool:
        return set(self.table) == set(range(self.target.n))

    def compose(self, inner: "SpaceMap") -> "SpaceMap":
        """self after inner."""
        if inner.target != self.source:
            raise SpaceMismatch("maps do not compose")
        return SpaceMap(inner.source, self.target, [self.table[j] for j in inner.table])

    def __eq__(self, other) -> bool:
        if not isinstance(other, SpaceMap):
            return NotImplemented
        return (self.source, self.target, self.table) == (other.source, other.target, other.table)

    def __repr__(self) -> str:
        return f"SpaceMap({self.table!r})"


def pushforward(f: SpaceMap, mu: IdemMeasure) -> IdemMeasure:
    """Image measure: weights of atoms with a common image merge by max."""
    if mu.space != f.source:
        raise SpaceMismatch("measure does not live on the map's source")
    pairs = [(f(a), w) for a, w in mu.atoms]
    return IdemMeasure(pairs, space=f.target)


def map_atoms(fn: Callable[[Atom], Atom], mu: IdemMeasure, space: Optional[FiniteSpace] = None) -> IdemMeasure:
    """Pushforward along an arbitrary atom function (points, measures)."""
    return IdemMeasure([(fn(a), w) for a, w in mu.atoms], space=space)


def density_of(mu: IdemMeasure) -> DensityTable:
    return mu.density()


def measure_of_density(d: DensityTable) -> IdemMeasure:
    return IdemMeasure.from_weights(d.space, d.values)


# -- distance surrogate ----------------------------------------------------

INDICATOR_DEPTH = Fraction(1000)


class PointFunction:
    """Named continuous test function on points, exact on rationals."""

    __slots__ = ("name", "fn")

    def __init__(self, name: str, fn: Callable[[TropVector], TropScalar]):
        self.name = name
        self.fn = fn

    def __call__(self, p: TropVector) -> TropScalar:
        return self.fn(p)

    def __repr__(self) -> str:
        return f"PointFunction({self.name})"


def coordinate_projection(dim: int, j: int) -> PointFunction:
    return PointFunction(f"proj[{j}]", lambda p: p[j])


def pairwise_min(dim: int, i: int, j: int) -> PointFunction:
    return PointFunction(f"min[{i},{j}]", lambda p: p[i] if p[i] <= p[j] else p[j])


def random_affine(dim: int, rng: random.Random) -> PointFunction:
    """max_j (a_j + p_j) oplus c with small random rational coefficients."""
    grid = [Fraction(k, 8) for k in range(-16, 1)]
    coeffs = [TropScalar(rng.choice(grid)) for _ in range(dim)]
    const = TropScalar(rng.choice(grid))
    label = "affine[" + ",".join(str(c) for c in coeffs) + f";{const}]"

    def fn(p: TropVector, coeffs=tuple(coeffs), const=const) -> TropScalar:
        return oplus(oplus_all(odot(a, c) for a, c in zip(coeffs, p.coords)), const)

    return PointFunction(label, fn)


def default_tests_for_space(space: FiniteSpace) -> list:
    """Indicator-style tables (0 at one atom, -1000 elsewhere), plus the
    coordinate projections when the space is embedded."""
    tests = []
    for i in range(space.n):
        vals = [-INDICATOR_DEPTH] * space.n
        vals[i] = Fraction(0)
        tests.append(FunctionTable(space, vals))
    if space.points is not None:
        d = space.points[0].dim
        for j in range(d):
            tests.append(FunctionTable(space, [p[j].q for p in space.points]))
    return tests


def default_tests_for_points(dim: int, k_random: int = 32, seed: int = 0) -> list:
    """Projections, pairwise mins, and k seeded random affine functions."""
    tests = [coordinate_projection(dim, j) for j in range(dim)]
    for i in range(dim):
        for j in range(i + 1, dim):
            tests.append(pairwise_min(dim, i, j))
    rng = random.Random(seed)
    tests += [random_affine(dim, rng) for _ in range(k_random)]
    return tests


def measure_dist(
    mu: IdemMeasure,
    nu: IdemMeasure,
    tests: Optional[Sequence] = None,
    k_random: int = 32,
    seed: int = 0,
) -> float:
    """Surrogate distance: max over a test family of rho(mu(phi), nu(phi)).

    With the default family this dominates weight-wise convergence on a
    common finite space, and tracks atom motion for point measures.
    """
    if tests is None:
        if mu.space is not None and mu.space == nu.space:
            tests = default_tests_for_space(mu.space)
        elif mu.space is None and nu.space is None:
            dims = {a.dim for a, _ in mu.atoms if isinstance(a, TropVector)}
            dims |= {a.dim for a, _ in nu.atoms if isinstance(a, TropVector)}
            if len(dims) != 1:
                raise DimensionMismatch("point measures of mixed dimension")
            tests = default_tests_for_points(dims.pop(), k_random=k_random, seed=seed)
        else:
            raise SpaceMismatch("no default test family across different spaces")
    if not tests:
        raise EmptyTestFamily("measure_dist needs at least one test function")
    return max(rho(mu(phi), nu(phi)) for phi in tests)
