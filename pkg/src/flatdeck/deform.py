"""Cylinder shear and stretch, area portions, and the circumference law.

Deformations act in the direction frame of the chosen periodic direction:
shearing a cylinder by t adds t times its height to its twist, stretching by
a factor multiplies its height, and nothing else moves.  The surface is then
reassembled from its cylinder diagram and mapped back through the inverse
frame, so the result is exact and the widths of all cylinders are untouched.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import DiagramParams, build_from_diagram, raw_presentation
from .field import Scalar, Vec2, cross
from .surface import PolygonSurface, apply_matrix
from .trace import Decomposition, Direction, Inconclusive, NotPeriodic, decompose


class NotCertifiedError(RuntimeError):
    """A needed direction did not certify periodic within the budget."""

    def __init__(self, outcome):
        self.outcome = outcome
        super().__init__("direction not certified periodic: %r" % (outcome,))


@dataclass(frozen=True)
class DeformationSpec:
    direction: Direction
    cylinders: tuple
    shear: Scalar = Scalar(0)
    stretch: Scalar = Scalar(1)

    def __post_init__(self):
        object.__setattr__(self, "direction", Direction.make(self.direction))
        object.__setattr__(self, "cylinders", tuple(self.cylinders))
        for name in ("shear", "stretch"):
            v = getattr(self, name)
            if not isinstance(v, Scalar):
                object.__setattr__(self, name, Scalar(v))
        if not self.cylinders:
            raise ValueError("deformation needs a nonempty cylinder subset")
        if self.stretch.sign() <= 0:
            raise ValueError("stretch factor must be positive")


def require_periodic(s: PolygonSurface, direction, budget=None) -> Decomposition:
    res = decompose(s, direction, budget)
    if isinstance(res, (Inconclusive, NotPeriodic)):
        raise NotCertifiedError(res)
    return res


def deform_decomposition(dec: Decomposition, changes: dict) -> PolygonSurface:
    """Rebuild with per-cylinder (twist increment, height factor) changes."""
    diag, params = raw_presentation(dec)
    heights = list(params.heights)
    twists = list(params.twists)
    for i, (dtau, factor) in changes.items():
        if not (0 <= i < len(heights)):
            raise IndexError("cylinder index %d out of range" % i)
        twists[i] = twists[i] + dtau
        heights[i] = heights[i] * factor
    rebuilt = build_from_diagram(
        diag, DiagramParams(params.lengths, tuple(heights), tuple(twists)),
        d=dec.surface.d,
    )
    return apply_matrix(rebuilt, dec.frame.inverse())


def cylinder_deform(s: PolygonSurface, spec: DeformationSpec, budget=None) -> PolygonSurface:
    """Shear and stretch the selected cylinders of one periodic direction."""
    dec = require_periodic(s, spec.direction, budget)
    changes = {}
    for i in spec.cylinders:
        if not (0 <= i < len(dec.cylinders)):
            raise IndexError("cylinder index %d out of range" % i)
        h = dec.cylinders[i].height
        changes[i] = (spec.shear * h, spec.stretch)
    return deform_decomposition(dec, changes)


def predicted_circumference(c1: Scalar, p: Scalar, t: Scalar) -> Scalar:
    """Width of a transverse cylinder after stretching by t, by the portion law."""
    c1, p, t = _scalarize(c1), _scalarize(p), _scalarize(t)
    if p.sign() < 0 or (p - 1).sign() > 0:
        raise ValueError("portion must lie in [0, 1]")
    if t.sign() <= 0:
        raise ValueError("stretch factor must be positive")
    return (Scalar(1) - p + t * p) * c1


# -- exact area portions -------------------------------------------------------


def _shoelace(pts) -> Scalar:
    total = Scalar(0)
    n = len(pts)
    for i in range(n):
        total = total + cross(pts[i], pts[(i + 1) % n])
    return total / 2


def _clip_half_plane(pts, a: Vec2, b: Vec2):
    """Keep the part of a convex polygon left of the directed line a->b."""
    if not pts:
        return []
    d = b - a
    out = []
    n = len(pts)
    sides = [cross(d, p - a).sign() for p in pts]
    for i in range(n):
        p, q = pts[i], pts[(i + 1) % n]
        sp, sq = sides[i], sides[(i + 1) % n]
        if sp >= 0:
            out.append(p)
        if sp * sq < 0:
            num = cross(d, a - p)
            den = cross(d, q - p)
            t = num / den
            out.append(p + (q - p) * t)
    dedup = []
    for p in out:
        if not dedup or dedup[-1] != p:
            dedup.append(p)
    if len(dedup) > 1 and dedup[0] == dedup[-1]:
        dedup.pop()
    return dedup


def convex_overlap_area(poly1, poly2) -> Scalar:
    """Exact area of the intersection of two convex polygons (ccw)."""
    pts = list(poly1)
    n = len(poly2)
    for i in range(n):
        pts = _clip_half_plane(pts, poly2[i], poly2[(i + 1) % n])
        if len(pts) < 3:
            return Scalar(0)
    return _shoelace(pts)


def cylinder_area(dec: Decomposition, i: int) -> Scalar:
    """Area of a cylinder measured in the surface's own coordinates."""
    total = Scalar(0)
    for (_p, pts) in dec.cylinders[i].pieces:
        total = total + _shoelace(pts)
    return total


def portion(dec_a: Decomposition, i: int, dec_b: Decomposition, indices) -> Scalar:
    """P(C, collection): the fraction of cylinder C covered by the collection.

    Both decompositions must certify periodic directions of the same surface;
    the overlap is computed by exact convex clipping of the cylinders' pieces
    in the shared surface coordinates.
    """
    if dec_a.surface is not dec_b.surface and dec_a.surface != dec_b.surface:
        raise ValueError("portions need two decompositions of one surface")
    indices = tuple(indices)
    denom = cylinder_area(dec_a, i)
    if not indices:
        return Scalar(0)
    by_poly = {}
    for j in indices:
        for (p, pts) in dec_b.cylinders[j].pieces:
            by_poly.setdefault(p, []).append(pts)
    overlap = Scalar(0)
    for (p, pts) in dec_a.cylinders[i].pieces:
        for other in by_poly.get(p, ()):
            overlap = overlap + convex_overlap_area(pts, other)
    return overlap / denom


def portion_by_directions(s, dir_a, i, dir_b, indices, budget=None) -> Scalar:
    dec_a = require_periodic(s, dir_a, budget)
    dec_b = require_periodic(s, dir_b, budget)
    return portion(dec_a, i, dec_b, indices)


def segment_covered_fraction(dec: Decomposition, i: int, p: int, a: Vec2, b: Vec2) -> Scalar:
    """Fraction of the segment a->b (in polygon p) inside cylinder i's closure."""
    intervals = []
    d = b - a
    for (pp, pts) in dec.cylinders[i].pieces:
        if pp != p:
            continue
        t0, t1 = Scalar(0), Scalar(1)
        n = len(pts)
        ok = True
        for k in range(n):
            e0, e1 = pts[k], pts[(k + 1) % n]
            ed = e1 - e0
            denom = cross(ed, d)
            num = cross(ed, e0 - a)
            side = denom.sign()
            if side == 0:
                if cross(ed, a - e0).sign() < 0:
                    ok = False
                    break
                continue
            t = num / denom
            if side > 0:
                if t > t0:
                    t0 = t
            else:
                if t < t1:
                    t1 = t
        if ok and t0 < t1:
            intervals.append((t0, t1))
    intervals.sort()
    covered = Scalar(0)
    cursor = Scalar(0)
    for (t0, t1) in intervals:
        lo = t0 if t0 > cursor else cursor
        if t1 > lo:
            covered = covered + (t1 - lo)
            cursor = t1
    return covered


def sc_segments_original(dec: Decomposition, sc_index: int):
    """Saddle-connection chords mapped back to the surface's coordinates."""
    ginv = dec.frame.inverse()
    out = []
    for (p, y, x0, x1) in dec.saddle_connections[sc_index].segments:
        a = ginv.apply(Vec2(x0, y))
        b = ginv.apply(Vec2(x1, y))
        out.append((p, a, b))
    return out


def sc_in_cylinder_closure(dec_sc: Decomposition, sc_index: int, dec_cyl: Decomposition, i: int) -> bool:
    """Does the closure of a transverse cylinder contain a saddle connection?"""
    for (p, a, b) in sc_segments_original(dec_sc, sc_index):
        if segment_covered_fraction(dec_cyl, i, p, a, b) != 1:
            return False
    return True


# -- canonical forms and isomorphism -------------------------------------------


def canonical_form(s: PolygonSurface, direction=(1, 0), budget=None):
    """Hashable canonical invariant of the decomposition in one direction.

    Two surfaces certified periodic in the direction are translation
    equivalent respecting that direction iff their canonical forms are equal.
    """
    from .diagram import canonical_presentation

    dec = require_periodic(s, direction, budget)
    diag, params = canonical_presentation(dec)
    lengths = tuple(params.lengths[k] for k in sorted(params.lengths))
    key_scalars = tuple(
        (v.a, v.b, v.d) for v in lengths + tuple(params.heights) + tuple(params.twists)
    )
    return (diag.cylinders, key_scalars)


def surfaces_isomorphic(s1: PolygonSurface, s2: PolygonSurface, direction=(1, 0), budget=None) -> bool:
    """Canonical-form equality of the two decompositions in one direction."""
    return canonical_form(s1, direction, budget) == canonical_form(s2, direction, budget)


def _scalarize(v):
    return v if isinstance(v, Scalar) else Scalar(v)
