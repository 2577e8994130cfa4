"""Translation surfaces as convex polygons glued along parallel edges.

A surface is a list of convex, positively oriented polygons (stored as cyclic
lists of edge vectors) together with a perfect matching of directed edges by
translations.  Cone points come out of the corner identification orbits; the
cone order at a class is found by counting, over the cyclic fan of corners,
the sectors containing a fixed reference direction, so no transcendental
arithmetic is ever needed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .field import Mat2, Scalar, Vec2, cross, dot, format_scalar, parse_scalar, _squarefree

FORMAT_NAME = "flatdeck-surface/1"


@dataclass(frozen=True)
class ValidationIssue:
    code: str
    message: str
    where: tuple


@dataclass(frozen=True)
class ValidationReport:
    issues: tuple

    @property
    def ok(self) -> bool:
        return not self.issues

    def __str__(self):
        if self.ok:
            return "valid"
        return "; ".join("%s %s at %r" % (i.code, i.message, i.where) for i in self.issues)


@dataclass(frozen=True)
class StratumSignature:
    """Zero orders sorted descending, genus, and the count of marked points."""

    orders: tuple
    genus: int
    marked: int = 0

    def __str__(self):
        inside = ",".join(str(k) for k in self.orders)
        return "H(%s) genus %d" % (inside, self.genus)


class SurfaceError(ValueError):
    """Structural problem that prevents interpreting the data as a surface."""


class PolygonSurface:
    """Immutable polygon-with-gluings presentation of a translation surface."""

    __slots__ = ("d", "polygons", "gluings", "_partner", "_vertices", "_vclasses")

    def __init__(self, d, polygons, gluings):
        if not _squarefree(d):
            raise SurfaceError("field discriminant %r is not squarefree >= 1" % (d,))
        polys = []
        for poly in polygons:
            edges = tuple(v if isinstance(v, Vec2) else Vec2(*v) for v in poly)
            for v in edges:
                for s in (v.x, v.y):
                    if s.d not in (1, d):
                        raise SurfaceError("coordinate %s outside Q(√%d)" % (s, d))
            polys.append(edges)
        pairs = set()
        partner = {}
        for a, b in gluings:
            a = (int(a[0]), int(a[1]))
            b = (int(b[0]), int(b[1]))
            key = (min(a, b), max(a, b))
            if a == b:
                raise SurfaceError("edge %r glued to itself" % (a,))
            pairs.add(key)
            for x, y in ((a, b), (b, a)):
                if x in partner and partner[x] != y:
                    raise SurfaceError("edge %r glued twice" % (x,))
                partner[x] = y
        object.__setattr__(self, "d", int(d))
        object.__setattr__(self, "polygons", tuple(polys))
        object.__setattr__(self, "gluings", tuple(sorted(pairs)))
        object.__setattr__(self, "_partner", partner)
        object.__setattr__(self, "_vertices", None)
        object.__setattr__(self, "_vclasses", None)

    def __setattr__(self, *args):
        raise AttributeError("PolygonSurface is immutable")

    # -- basic accessors ----------------------------------------------------

    def edge_count(self, p: int) -> int:
        return len(self.polygons[p])

    def edge_vector(self, p: int, e: int) -> Vec2:
        poly = self.polygons[p]
        return poly[e % len(poly)]

    def partner(self, p: int, e: int):
        return self._partner.get((p, e))

    def vertices(self, p: int):
        """Polygon corners, anchored at the origin (prefix sums of edges)."""
        if self._vertices is None:
            all_vs = []
            for poly in self.polygons:
                acc = Vec2(0, 0)
                vs = []
                for v in poly:
                    vs.append(acc)
                    acc = acc + v
                all_vs.append(tuple(vs))
            object.__setattr__(self, "_vertices", tuple(all_vs))
        return self._vertices[p]

    def gluing_translation(self, p: int, e: int) -> Vec2:
        """Translation carrying points of edge (p, e) onto its partner."""
        q, f = self._partner[(p, e)]
        a = self.vertices(p)[e]
        c = self.vertices(q)[f]
        return c + self.edge_vector(q, f) - a  # D - A with D = C + vec_f = tail + vec

    def __eq__(self, other):
        if not isinstance(other, PolygonSurface):
            return NotImplemented
        return (
            self.d == other.d
            and self.polygons == other.polygons
            and self.gluings == other.gluings
        )

    def __hash__(self):
        return hash((self.d, self.polygons, self.gluings))

    def __repr__(self):
        return "PolygonSurface(d=%d, %d polygons, %d gluings)" % (
            self.d,
            len(self.polygons),
            len(self.gluings),
        )

    # -- corner fans ----------------------------------------------------------

    def corner_sector(self, p: int, c: int):
        """(u, w): the corner's interior directions sweep ccw from u to w."""
        n = len(self.polygons[p])
        u = self.edge_vector(p, c)
        w = -self.edge_vector(p, (c - 1) % n)
        return u, w

    def sector_contains(self, p: int, c: int, r: Vec2) -> bool:
        """Half-open test: r in [u, w) for the corner fan at (p, c)."""
        u, w = self.corner_sector(p, c)
        cu = cross(u, r).sign()
        if cu == 0:
            return dot(u, r).sign() > 0
        return cu > 0 and cross(r, w).sign() > 0

    def next_corner_ccw(self, p: int, c: int):
        """The corner following (p, c) in the ccw fan around its vertex."""
        n = len(self.polygons[p])
        q, f = self._partner[(p, (c - 1) % n)]
        return (q, f)

    def vertex_classes(self):
        """Corner orbits with cone orders: list of (corners_in_ccw_order, k)."""
        if self._vclasses is not None:
            return self._vclasses
        seen = set()
        classes = []
        east = Vec2(1, 0)
        for p in range(len(self.polygons)):
            for c in range(len(self.polygons[p])):
                if (p, c) in seen:
                    continue
                orbit = []
                cur = (p, c)
                while cur not in seen:
                    seen.add(cur)
                    orbit.append(cur)
                    cur = self.next_corner_ccw(*cur)
                if cur != (p, c):
                    raise SurfaceError("corner orbit does not close at %r" % (cur,))
                outgoing = sum(1 for (pp, cc) in orbit if self.sector_contains(pp, cc, east))
                if outgoing < 1:
                    raise SurfaceError("vertex class with no outgoing direction")
                classes.append((tuple(orbit), outgoing - 1))
        classes.sort(key=lambda cls: min(cls[0]))
        object.__setattr__(self, "_vclasses", tuple(classes))
        return self._vclasses

    def corner_class_index(self, p: int, c: int) -> int:
        for i, (orbit, _k) in enumerate(self.vertex_classes()):
            if (p, c) in orbit:
                return i
        raise KeyError((p, c))


def validate(s: PolygonSurface) -> ValidationReport:
    """Check every structural invariant; failures become report entries."""
    issues = []

    def bad(code, message, where=()):
        issues.append(ValidationIssue(code, message, tuple(where)))

    for p, poly in enumerate(s.polygons):
        if len(poly) < 3:
            bad("too-few-edges", "polygon has %d edges" % len(poly), (p,))
            continue
        total = Vec2(0, 0)
        for v in poly:
            total = total + v
        if total != Vec2(0, 0):
            bad("open-polygon", "edge vectors do not sum to zero", (p,))
        area2 = Scalar(0)
        acc = Vec2(0, 0)
        for v in poly:
            area2 = area2 + cross(acc, v)
            acc = acc + v
        if area2.sign() <= 0:
            bad("orientation", "polygon is not positively oriented", (p,))
        n = len(poly)
        for e in range(n):
            u, w = poly[e], poly[(e + 1) % n]
            if not u:
                bad("zero-edge", "edge vector is zero", (p, e))
                continue
            c = cross(u, w).sign()
            if c < 0:
                bad("non-convex", "reflex corner", (p, (e + 1) % n))
            elif c == 0 and dot(u, w).sign() < 0:
                bad("non-convex", "edge doubles back", (p, (e + 1) % n))

    for p, poly in enumerate(s.polygons):
        for e in range(len(poly)):
            mate = s.partner(p, e)
            if mate is None:
                bad("unglued-edge", "edge has no gluing partner", (p, e))
                continue
            q, f = mate
            if not (0 <= q < len(s.polygons)) or not (0 <= f < len(s.polygons[q])):
                bad("bad-gluing", "gluing refers outside the surface", (p, e))
                continue
            if s.edge_vector(p, e) != -s.edge_vector(q, f):
                bad("non-translation gluing", "glued edges are not opposite vectors", (p, e))
    for (a, b) in s.gluings:
        for (p, e) in (a, b):
            if not (0 <= p < len(s.polygons)) or not (0 <= e < len(s.polygons[p])):
                bad("bad-gluing", "gluing refers outside the surface", (p, e))

    if not issues:
        reached = {0}
        stack = [0]
        while stack:
            p = stack.pop()
            for e in range(len(s.polygons[p])):
                q, _f = s.partner(p, e)
                if q not in reached:
                    reached.add(q)
                    stack.append(q)
        if len(reached) != len(s.polygons):
            bad("disconnected", "gluing graph is not connected", tuple(sorted(reached)))

    return ValidationReport(tuple(issues))


def area(s: PolygonSurface) -> Scalar:
    """Total area, summed by the shoelace formula; exact."""
    total = Scalar(0)
    for p in range(len(s.polygons)):
        vs = s.vertices(p)
        acc = Scalar(0)
        n = len(vs)
        for i in range(n):
            acc = acc + cross(vs[i], vs[(i + 1) % n])
        total = total + acc / 2
    return total


def stratum(s: PolygonSurface) -> StratumSignature:
    """Zero orders and genus, with the two genus computations cross-checked."""
    classes = s.vertex_classes()
    orders = sorted((k for _orbit, k in classes if k > 0), reverse=True)
    marked = sum(1 for _orbit, k in classes if k == 0)
    total_k = sum(k for _orbit, k in classes)

    n_v = len(classes)
    n_e = sum(len(poly) for poly in s.polygons) // 2
    n_f = len(s.polygons)
    euler = n_v - n_e + n_f
    if euler % 2 != 0:
        raise SurfaceError("odd Euler characteristic %d" % euler)
    genus_euler = (2 - euler) // 2
    if total_k != 2 * genus_euler - 2:
        raise SurfaceError(
            "cone orders sum to %d but Euler characteristic gives genus %d"
            % (total_k, genus_euler)
        )
    return StratumSignature(tuple(orders), genus_euler, marked)


def apply_matrix(s: PolygonSurface, m: Mat2) -> PolygonSurface:
    """Image under a matrix with positive determinant; gluings unchanged."""
    if m.det().sign() <= 0:
        raise ValueError("matrix must have positive determinant")
    polys = [[m.apply(v) for v in poly] for poly in s.polygons]
    return PolygonSurface(_surface_field(s, m), polys, s.gluings)


def _surface_field(s: PolygonSurface, m: Mat2) -> int:
    ds = {s.d}
    for v in (m.a, m.b, m.c, m.d):
        if v.d != 1:
            ds.add(v.d)
    ds.discard(1)
    if len(ds) > 1:
        raise SurfaceError("matrix entries leave the surface field")
    return ds.pop() if ds else 1


# -- wire format -------------------------------------------------------------


def _scalar_to_obj(s: Scalar):
    obj = {"a": str(s.a)}
    if s.b != 0:
        obj["b"] = str(s.b)
    return obj


def _scalar_from_obj(obj, d: int) -> Scalar:
    if isinstance(obj, str):
        return parse_scalar(obj)
    a = Fraction(obj.get("a", "0"))
    b = Fraction(obj.get("b", "0"))
    return Scalar(a, b, d if b else 1)


def surface_to_obj(s: PolygonSurface) -> dict:
    return {
        "format": FORMAT_NAME,
        "field": {"d": s.d},
        "polygons": [
            [[_scalar_to_obj(v.x), _scalar_to_obj(v.y)] for v in poly]
            for poly in s.polygons
        ],
        "gluings": [[list(a), list(b)] for a, b in s.gluings],
    }


def surface_from_obj(obj: dict) -> PolygonSurface:
    if obj.get("format") != FORMAT_NAME:
        raise SurfaceError("unsupported format %r" % (obj.get("format"),))
    d = int(obj["field"]["d"])
    polys = [
        [Vec2(_scalar_from_obj(vx, d), _scalar_from_obj(vy, d)) for vx, vy in poly]
        for poly in obj["polygons"]
    ]
    gluings = [((a[0], a[1]), (b[0], b[1])) for a, b in obj["gluings"]]
    return PolygonSurface(d, polys, gluings)


def save_surface(s: PolygonSurface, path):
    with open(path, "w") as fh:
        json.dump(surface_to_obj(s), fh, indent=1)
        fh.write("\n")


def load_surface(path) -> PolygonSurface:
    with open(path) as fh:
        return surface_from_obj(json.load(fh))
