"""Cover-based finite-support approximation with exact barycenter
preservation.

A cover is a finite family of max-plus convex subsets of the host.  The
approximation of a measure collapses the atoms inside each element to a
single dirac at the conditional barycenter, weighted by the heaviest
atom the element sees.  The barycenter of the result equals the
barycenter of the input exactly, which is asserted on every call.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .barycenter import barycenter_point
from .core import TropScalar, TropVector, odot, oplus_all
from .errors import BadInput, NonConvexElement, UncoveredAtom
from .geometry import Box, TropPolytope
from .measures import FiniteSpace, IdemMeasure, map_atoms, measure_dist


class BoxElement:
    """Axis-aligned sub-box as a cover element (max-plus convex)."""

    __slots__ = ("box",)

    def __init__(self, box: Box):
        self.box = box

    def contains_point(self, x: TropVector) -> bool:
        return self.box.contains(x)

    def subset_of(self, other: "CoverElement") -> bool:
        if isinstance(other, BoxElement):
            return other.box.low.leq(self.box.low) and self.box.high.leq(other.box.high)
        if isinstance(other, PolytopeElement):
            return all(other.contains_point(c) for c in self.box.corners_polytope().generators)
        return False

    def __eq__(self, other) -> bool:
        return isinstance(other, BoxElement) and self.box == other.box

    def __hash__(self) -> int:
        return hash(("box", self.box.low, self.box.high))

    def __repr__(self) -> str:
        return f"BoxElement({self.box!r})"


class PolytopeElement:
    """Tropical polytope as a cover element."""

    __slots__ = ("poly",)

    def __init__(self, poly: TropPolytope):
        self.poly = poly

    def contains_point(self, x: TropVector) -> bool:
        return self.poly.contains(x)

    def subset_of(self, other: "CoverElement") -> bool:
        if isinstance(other, (BoxElement, PolytopeElement)):
            return all(other.contains_point(g) for g in self.poly.generators)
        return False

    def __eq__(self, other) -> bool:
        return isinstance(other, PolytopeElement) and self.poly == other.poly

    def __hash__(self) -> int:
        return hash(("poly", self.poly.generators))

    def __repr__(self) -> str:
        return f"PolytopeElement({self.poly!r})"


class IndexElement:
    """Subset of an embedded finite space as a cover element.

    Convexity is not syntactically guaranteed here; a conditional
    barycenter that leaves the subset raises NonConvexElement at use.
    """

    __slots__ = ("indices",)

    def __init__(self, indices):
        self.indices = frozenset(indices)
        if not self.indices:
            raise BadInput("an empty set cannot be a cover element")
        if not all(isinstance(i, int) and i >= 0 for i in self.indices):
            raise BadInput("index elements hold nonnegative point indices")

    def admit_point(self, x: TropVector, space: FiniteSpace) -> Optional[int]:
        """Index of the subset point the vector x coincides with, if any."""
        for i in sorted(self.indices):
            if space.points[i] == x:
                return i
        return None

    def subset_of(self, other: "CoverElement") -> bool:
        return isinstance(other, IndexElement) and self.indices <= other.indices

    def __eq__(self, other) -> bool:
        return isinstance(other, IndexElement) and self.indices == other.indices

    def __hash__(self) -> int:
        return hash(("idx", self.indices))

    def __repr__(self) -> str:
        return f"IndexElement({sorted(self.indices)})"


CoverElement = Union[BoxElement, PolytopeElement, IndexElement]


class Cover:
    """Finite family of max-plus convex subsets covering a support."""

    __slots__ = ("elements",)

    def __init__(self, elements: Sequence[CoverElement]):
        elements = tuple(elements)
        if not elements:
            raise BadInput("a cover needs at least one element")
        kinds = {isinstance(e, IndexElement) for e in elements}
        if len(kinds) > 1:
            raise BadInput("cannot mix index elements with geometric elements")
        self.elements = elements

    @staticmethod
    def singletons(mu: IdemMeasure) -> "Cover":
        """One element per atom; the approximation returns mu itself."""
        if mu.space is not None:
            return Cover([IndexElement([a]) for a, _ in mu.atoms])
        return Cover([PolytopeElement(TropPolytope([a])) for a, _ in mu.atoms])

    @staticmethod
    def grid(box: Box, splits: int) -> "Cover":
        """Cover of a box by the closed cells of an even grid."""
        if splits < 1:
            raise BadInput("need at least one cell per axis")
        axes = []
        for j in range(box.dim):
            lo, hi = box.interval(j)
            step = (hi.q - lo.q) / splits
            axes.append([(lo.q + k * step, lo.q + (k + 1) * step) for k in range(splits)])
        cells = []
        for cuts in itertools.product(*axes):
            low = TropVector([c[0] for c in cuts])
            high = TropVector([c[1] for c in cuts])
            cells.append(BoxElement(Box(low, high)))
        return Cover(cells)

    def __eq__(self, other) -> bool:
        return isinstance(other, Cover) and self.elements == other.elements

    def __repr__(self) -> str:
        return f"Cover({len(self.elements)} elements)"


@dataclass(frozen=True)
class CoverPiece:
    """One element's contribution: weight, conditional measure, and its
    barycenter (as an atom of the host measure)."""

    element_index: int
    weight: TropScalar
    conditional: IdemMeasure
    atom: object
    point: TropVector


def _element_holds(element: CoverElement, atom, space: Optional[FiniteSpace]) -> bool:
    if isinstance(element, IndexElement):
        return isinstance(atom, int) and atom in element.indices
    if isinstance(atom, int):
        return element.contains_point(space.points[atom])
    return element.contains_point(atom)


def _embedded_barycenter(mu: IdemMeasure) -> TropVector:
    if mu.space is None:
        return barycenter_point(mu)
    space = mu.space
    return barycenter_point(map_atoms(lambda i: space.points[i], mu))


def cover_pieces(mu: IdemMeasure, cover: Cover) -> list[CoverPiece]:
    """Conditional decomposition of mu along the cover.

    Every atom must fall inside at least one element (UncoveredAtom
    otherwise); elements seeing no atom are skipped.  Each piece's
    barycenter must stay inside its element (NonConvexElement otherwise:
    the element was not max-plus convex after all).
    """
    space = mu.space
    if space is not None and space.points is None:
        raise BadInput("measures over a finite space need an embedding for barycenters")
    covered = [False] * mu.atom_count
    pieces = []
    for k, element in enumerate(cover.elements):
        inside = []
        for pos, (atom, weight) in enumerate(mu.atoms):
            if _element_holds(element, atom, space):
                inside.append((atom, weight))
                covered[pos] = True
        if not inside:
            continue
        s_k = oplus_all(w for _, w in inside)
        conditional = IdemMeasure(inside, space=space, renormalize=True)
        point = _embedded_barycenter(conditional)
        if isinstance(element, IndexElement):
            atom = element.admit_point(point, space)
            if atom is None:
                raise NonConvexElement(
                    f"barycenter {point!r} escaped element {k} of the cover"
                )
        else:
            if not element.contains_point(point):
                raise NonConvexElement(
                    f"barycenter {point!r} escaped element {k} of the cover"
                )
            atom = point
        pieces.append(CoverPiece(k, s_k, conditional, atom, point))
    for pos, (atom, _) in enumerate(mu.atoms):
        if not covered[pos]:
            raise UncoveredAtom(f"atom {atom!r} lies in no cover element")
    return pieces


def cover_reconstruction(pieces: Sequence[CoverPiece], space: Optional[FiniteSpace] = None) -> IdemMeasure:
    """Recombine the weighted conditionals; equals the original measure."""
    pairs = []
    for piece in pieces:
        pairs.extend((a, odot(piece.weight, w)) for a, w in piece.conditional.atoms)
    return IdemMeasure(pairs, space=space)


def cover_approximation(mu: IdemMeasure, cover: Cover) -> IdemMeasure:
    """Collapse mu along a cover, preserving the barycenter exactly.

    Returns the join of diracs at the conditional barycenters, weighted
    by each element's heaviest atom.
    """
    pieces = cover_pieces(mu, cover)
    pairs = [(piece.atom, piece.weight) for piece in pieces]
    nu = IdemMeasure(pairs, space=mu.space)
    assert cover_reconstruction(pieces, space=mu.space) == mu
    assert _embedded_barycenter(nu) == _embedded_barycenter(mu)
    return nu


def refines(fine: Cover, coarse: Cover) -> bool:
    """Every element of the fine cover sits inside some coarse element."""
    return all(
        any(e.subset_of(big) for big in coarse.elements) for e in fine.elements
    )


def refinement_sweep(mu: IdemMeasure, chain: Sequence[Cover]) -> list[tuple[int, float]]:
    """Approximation distances along a strictly refining chain of covers.

    Returns (cover index, measure_dist(approximation, mu)) rows.  The
    distance hits 0 exactly when a cover isolates every atom.
    """
    chain = list(chain)
    if not chain:
        raise BadInput("an empty chain has no rows")
    for k in range(1, len(chain)):
        if chain[k] == chain[k - 1] or not refines(chain[k], chain[k - 1]):
            raise BadInput(f"cover {k} does not strictly refine cover {k - 1}")
    rows = []
    for k, cover in enumerate(chain):
        nu = cover_approximation(mu, cover)
        rows.append((k, measure_dist(nu, mu)))
    return rows
