"""Idempotent barycenter of finite-support measures.

For a measure over points, the barycenter's j-th coordinate is the max
over atoms of weight + coordinate: the measure applied to the j-th
projection.  For a measure whose atoms are measures on a common finite
space, the barycenter is the weighted max-combination of the atoms.
Both maps are affine for max-plus convex combinations, which the test
suite checks exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .core import TropVector, odot, oplus_all
from .errors import BadInput, NonConvexElement, SpaceMismatch
from .measures import FiniteSpace, IdemMeasure


@dataclass(frozen=True)
class BarycenterResult:
    point: TropVector
    membership_checked: bool


def _point_atoms(mu: IdemMeasure) -> list:
    """Resolve atoms to embedded points, whatever the measure's carrier."""
    if mu.space is not None:
        if mu.space.points is None:
            raise BadInput("barycenter needs an embedded space")
        return [(mu.space.points[a], w) for a, w in mu.atoms]
    pairs = []
    for a, w in mu.atoms:
        if not isinstance(a, TropVector):
            raise BadInput("barycenter over points needs point atoms")
        pairs.append((a, w))
    return pairs


def barycenter(mu: IdemMeasure, host=None) -> BarycenterResult:
    """Barycenter point of a measure over (embedded) points.

    When a host with a `contains` method is supplied, membership of the
    result is verified; a failure means the support escaped the host.
    """
    pairs = _point_atoms(mu)
    dim = pairs[0][0].dim
    coords = []
    for j in range(dim):
        coords.append(oplus_all(odot(w, p[j]) for p, w in pairs))
    point = TropVector(coords)
    checked = False
    if host is not None:
        if not host.contains(point):
            raise NonConvexElement(f"barycenter {point!r} escaped the host")
        checked = True
    return BarycenterResult(point, checked)


def barycenter_point(mu: IdemMeasure) -> TropVector:
    return barycenter(mu).point


def barycenter_of_measures(big: IdemMeasure, space: Optional[FiniteSpace] = None) -> IdemMeasure:
    """Barycenter of a measure whose atoms are measures on one finite space."""
    if big.space is not None:
        raise BadInput("expected a measure over measure atoms")
    spaces = {a.space for a, _ in big.atoms}
    if len(spaces) != 1 or None in spaces:
        raise SpaceMismatch("atom measures must share one finite space")
    inner_space = spaces.pop()
    if space is not None and space != inner_space:
        raise SpaceMismatch("atom measures do not live on the requested space")
    pairs = []
    for inner, s in big.atoms:
        pairs += [(a, odot(s, w)) for a, w in inner.atoms]
    return IdemMeasure(pairs, space=inner_space)
