"""Separatrix tracing, saddle connections, and cylinder decompositions.

Everything here runs in a *direction frame*: an exact change of coordinates
sending the requested direction to (1, 0), so that tracing is horizontal and
every exit computation is a sign test plus one division.  For a primitive
integer direction the frame is the unimodular integer matrix from
:func:`flatdeck.field.direction_frame`; widths, heights, twists and trace
budgets are all measured in those frame units (a budget of ``t`` allows a
displacement of ``t`` times the direction vector).

A direction is certified periodic only when every outgoing separatrix
terminates at a vertex.  Budget exhaustion is reported as Inconclusive and is
never allowed to masquerade as a negative result; NotPeriodic needs an exact
first-return witness (the trace crossing a previously visited transversal
point away from any vertex).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .field import Mat2, Scalar, Vec2, cross, direction_frame, dot
from .surface import PolygonSurface, SurfaceError, apply_matrix, area

_STEP_LIMIT = 250_000


class Direction:
    """A nonzero direction, canonically normalized.

    The leading nonzero coordinate is made positive, and rational directions
    are stored as primitive integer vectors, so parallel inputs compare equal.
    """

    __slots__ = ("vector", "pq")

    def __init__(self, x, y=None):
        if y is None:
            x, y = x
        if not isinstance(x, Scalar):
            x = Scalar(x)
        if not isinstance(y, Scalar):
            y = Scalar(y)
        if not x and not y:
            raise ValueError("direction must be nonzero")
        lead = x if x else y
        if lead.sign() < 0:
            x, y = -x, -y
            lead = -lead
        pq = None
        if x.is_rational and y.is_rational:
            ax, ay = x.as_fraction(), y.as_fraction()
            den = ax.denominator * ay.denominator // gcd(ax.denominator, ay.denominator)
            p, q = int(ax * den), int(ay * den)
            g = gcd(p, q)
            p, q = p // g, q // g
            pq = (p, q)
            x, y = Scalar(p), Scalar(q)
        else:
            x, y = x / lead, y / lead
        object.__setattr__(self, "vector", Vec2(x, y))
        object.__setattr__(self, "pq", pq)

    def __setattr__(self, *args):
        raise AttributeError("Direction is immutable")

    @staticmethod
    def make(d) -> "Direction":
        if isinstance(d, Direction):
            return d
        if isinstance(d, Vec2):
            return Direction(d.x, d.y)
        return Direction(*d)

    def frame(self) -> Mat2:
        """Exact matrix sending this direction to (1, 0)."""
        if self.pq is not None:
            return direction_frame(*self.pq)
        v = self.vector
        return Mat2(v.x, v.y, -v.y, v.x)

    def __eq__(self, other):
        if not isinstance(other, Direction):
            return NotImplemented
        return self.vector == other.vector

    def __hash__(self):
        return hash(self.vector)

    def __repr__(self):
        if self.pq is not None:
            return "Direction(%d, %d)" % self.pq
        return "Direction(%s, %s)" % (self.vector.x, self.vector.y)


@dataclass(frozen=True)
class SaddleConnection:
    index: int
    holonomy: Vec2
    length: Scalar  # in frame units
    start: tuple  # (vertex class, outgoing separatrix index)
    end: tuple  # (vertex class, incoming separatrix index)
    crossings: tuple  # (polygon, edge) sequence, for reconstruction
    segments: tuple  # (polygon, y, x0, x1) chords in frame coordinates


@dataclass(frozen=True)
class Inconclusive:
    traced: Scalar
    reason: str
    separatrix: tuple

    def __bool__(self):
        return False


@dataclass(frozen=True)
class NotPeriodic:
    witness: str

    def __bool__(self):
        return False


@dataclass(frozen=True)
class Cylinder:
    width: Scalar
    height: Scalar
    twist: Scalar
    top_word: tuple
    bottom_word: tuple
    area: Scalar
    simple: bool
    pieces: tuple  # (polygon, vertex tuple) convex pieces, original coordinates
    crossings: tuple  # (polygon, left edge, right edge) per band, walk order
    top_positions: tuple  # arc start of each top-word letter, walk coordinate
    bottom_positions: tuple

    @property
    def modulus(self) -> Scalar:
        return self.height / self.width


class Decomposition:
    """A certified periodic direction: saddle connections plus cylinders."""

    __slots__ = (
        "surface",
        "direction",
        "frame",
        "saddle_connections",
        "cylinders",
        "adjacency",
    )

    def __init__(self, surface, direction, frame, saddle_connections, cylinders):
        object.__setattr__(self, "surface", surface)
        object.__setattr__(self, "direction", direction)
        object.__setattr__(self, "frame", frame)
        object.__setattr__(self, "saddle_connections", tuple(saddle_connections))
        object.__setattr__(self, "cylinders", tuple(cylinders))
        adj = []
        for i, ci in enumerate(self.cylinders):
            row = set()
            for j, cj in enumerate(self.cylinders):
                if i == j:
                    shared = set(ci.top_word) & set(ci.bottom_word)
                else:
                    shared = (set(ci.top_word) | set(ci.bottom_word)) & (
                        set(cj.top_word) | set(cj.bottom_word)
                    )
                if shared:
                    row.add(j)
            adj.append(frozenset(row))
        object.__setattr__(self, "adjacency", tuple(adj))

    def __setattr__(self, *args):
        raise AttributeError("Decomposition is immutable")

    def __bool__(self):
        return True

    def sc_length(self, i: int) -> Scalar:
        return self.saddle_connections[i].length

    def __repr__(self):
        return "Decomposition(%r, %d saddle connections, %d cylinders)" % (
            self.direction,
            len(self.saddle_connections),
            len(self.cylinders),
        )


def default_budget(s: PolygonSurface) -> Scalar:
    """1000 times the longest edge, edge size taken in the L1 norm."""
    longest = Scalar(0)
    for poly in s.polygons:
        for v in poly:
            m = abs(v.x) + abs(v.y)
            if m > longest:
                longest = m
    return longest * 1000


def outgoing_separatrices(s: PolygonSurface):
    """Per vertex class, the corners launching a (1,0)-separatrix, in fan order."""
    east = Vec2(1, 0)
    out = []
    for orbit, _k in s.vertex_classes():
        out.append(tuple((p, c) for (p, c) in orbit if s.sector_contains(p, c, east)))
    return out


def _incoming_index(s: PolygonSurface, cls_idx: int, corner):
    """Position of an arrival corner among the class's incoming separatrices."""
    west = Vec2(-1, 0)
    orbit, _k = s.vertex_classes()[cls_idx]
    incoming = []
    for (p, c) in orbit:
        u, w = s.corner_sector(p, c)
        cw = cross(west, w).sign()
        if cw == 0 and dot(west, w).sign() > 0:
            incoming.append((p, c))
        elif cross(u, west).sign() > 0 and cross(west, w).sign() > 0:
            incoming.append((p, c))
    return incoming.index(corner)


def _raw_geometry(fs: PolygonSurface):
    """Vertex coordinates and gluing translations as plain numbers.

    Over the rationals the coordinates come out as Fractions, which support
    the same arithmetic as Scalars at a fraction of the cost; the tracer and
    the band assembly are written against that common interface.
    """
    if fs.d == 1:
        unwrap = lambda s: s.a
    else:
        unwrap = lambda s: s
    verts = []
    for p in range(len(fs.polygons)):
        verts.append(tuple((unwrap(v.x), unwrap(v.y)) for v in fs.vertices(p)))
    trans = {}
    for p in range(len(fs.polygons)):
        for e in range(len(fs.polygons[p])):
            t = fs.gluing_translation(p, e)
            trans[(p, e)] = (unwrap(t.x), unwrap(t.y))
    return verts, trans


class _Tracer:
    """Shared state for horizontal tracing on a frame surface."""

    def __init__(self, fs: PolygonSurface):
        self.fs = fs
        self.classes = fs.vertex_classes()
        self.corner_class = {}
        for i, (orbit, _k) in enumerate(self.classes):
            for corner in orbit:
                self.corner_class[corner] = i
        self.east = Vec2(1, 0)
        self.verts, self.trans = _raw_geometry(fs)

    def _exit(self, p: int, x0, y0):
        """Next boundary point of polygon p strictly to the right of (x0, y0)."""
        vs = self.verts[p]
        n = len(vs)
        best_x = None
        best = None
        for i in range(n):
            vx, vy = vs[i]
            if vy == y0 and vx > x0:
                if best_x is None or vx < best_x:
                    best_x, best = vx, ("corner", i)
        for e in range(n):
            ax, ay = vs[e]
            bx, by = vs[(e + 1) % n]
            if (ay > y0) == (by > y0) or ay == y0 or by == y0:
                continue
            x = ax + (y0 - ay) * (bx - ax) / (by - ay)
            if x > x0 and (best_x is None or x < best_x):
                best_x, best = x, ("edge", e)
        if best is None:
            raise SurfaceError("flow escaped polygon %d" % (p,))
        return best_x, best

    def trace(self, start_corner, budget, sc_index: int):
        """Follow the (1,0) ray from a corner until it hits a vertex class.

        Returns a SaddleConnection (with raw-number length and segments; the
        caller wraps them), or Inconclusive when the budget or step limit
        runs out, or NotPeriodic on an exact first-return witness.
        """
        fs = self.fs
        p, c = start_corner
        start_class = self.corner_class[(p, c)]
        x, y = self.verts[p][c]
        traced = 0
        crossings = []
        segments = []
        visited = set()
        steps = 0
        sep = (start_class, start_corner)
        while True:
            steps += 1
            if steps > _STEP_LIMIT:
                return Inconclusive(traced, "step-limit", sep)
            x_exit, (kind, idx) = self._exit(p, x, y)
            segments.append((p, y, x, x_exit))
            traced = traced + (x_exit - x)
            if traced > budget:
                return Inconclusive(traced, "budget", sep)
            if kind == "corner":
                cls = self.corner_class[(p, idx)]
                _orbit, k = self.classes[cls]
                if k >= 1 or cls == start_class:
                    inc = _incoming_index(fs, cls, (p, idx))
                    return SaddleConnection(
                        index=sc_index,
                        holonomy=None,
                        length=traced,
                        start=(start_class, -1),
                        end=(cls, inc),
                        crossings=tuple(crossings),
                        segments=tuple(segments),
                    )
                # marked point: the straight continuation is unique
                for (q, cc) in self.classes[cls][0]:
                    if fs.sector_contains(q, cc, self.east):
                        p = q
                        x, y = self.verts[q][cc]
                        break
                else:
                    raise SurfaceError("marked point with no continuation")
            else:
                e = idx
                key = (p, e, x_exit, y)
                if key in visited:
                    return NotPeriodic(
                        "separatrix returned to a visited transversal point "
                        "on polygon %d edge %d" % (p, e)
                    )
                visited.add(key)
                crossings.append((p, e))
                q, _f = fs.partner(p, e)
                tx, ty = self.trans[(p, e)]
                p, x, y = q, x_exit + tx, y + ty


def _denominator_lcm(fs: PolygonSurface) -> int:
    out = 1
    for poly in fs.polygons:
        for v in poly:
            out = lcm(out, v.x.a.denominator, v.x.b.denominator)
            out = lcm(out, v.y.a.denominator, v.y.b.denominator)
    return out


def trace_separatrix(s: PolygonSurface, start, direction, budget=None):
    """Trace one outgoing separatrix of ``s`` in the given direction.

    ``start`` is (vertex class index, outgoing separatrix index).  The
    holonomy of a returned saddle connection is expressed in the original
    coordinates of ``s``.
    """
    direction = Direction.make(direction)
    g = direction.frame()
    fs = apply_matrix(s, g)
    lam = _denominator_lcm(fs)
    if lam > 1:
        fs = apply_matrix(fs, Mat2(lam, 0, 0, lam))
    if budget is None:
        budget = default_budget(fs)
    else:
        budget = budget * lam
    budget = _raw_budget(budget)
    tracer = _Tracer(fs)
    cls_idx, sep_idx = start
    launches = outgoing_separatrices(fs)[cls_idx]
    corner = launches[sep_idx]
    res = tracer.trace(corner, budget, 0)
    if isinstance(res, SaddleConnection):
        return _finish_sc(res, g, lam, (cls_idx, sep_idx))
    if isinstance(res, Inconclusive):
        return Inconclusive(_wrap(res.traced) / lam, res.reason, res.separatrix)
    return res


def _wrap(v):
    return v if isinstance(v, Scalar) else Scalar(v)


def _raw_budget(budget):
    if isinstance(budget, Scalar) and budget.b == 0:
        return budget.a
    return budget


def _finish_sc(sc: SaddleConnection, g: Mat2, lam: int, start):
    length = _wrap(sc.length) / lam if lam > 1 else _wrap(sc.length)
    if lam > 1:
        inv = Fraction(1, lam)
        segments = tuple(
            (p, _wrap(y * inv), _wrap(x0 * inv), _wrap(x1 * inv))
            for (p, y, x0, x1) in sc.segments
        )
    else:
        segments = tuple(
            (p, _wrap(y), _wrap(x0), _wrap(x1)) for (p, y, x0, x1) in sc.segments
        )
    return SaddleConnection(
        index=sc.index,
        holonomy=g.inverse().apply(Vec2(length, Scalar(0))),
        length=length,
        start=start,
        end=sc.end,
        crossings=sc.crossings,
        segments=segments,
    )


def decompose(s: PolygonSurface, direction, budget=None):
    """Full cylinder decomposition in one direction, or a definite refusal.

    Returns a Decomposition when every separatrix closes up, NotPeriodic on an
    exact non-closing witness, and Inconclusive when the budget ran out first.
    Internally the frame surface is rescaled to integer coordinates when
    possible, which keeps the exact arithmetic fast; all returned geometry is
    expressed in unscaled frame units.
    """
    direction = Direction.make(direction)
    g = direction.frame()
    fs = apply_matrix(s, g)
    area_frame = area(fs)
    lam = _denominator_lcm(fs)
    if lam > 1:
        fs = apply_matrix(fs, Mat2(lam, 0, 0, lam))
    if budget is None:
        budget = default_budget(fs)
    else:
        budget = budget * lam
    budget = _raw_budget(budget)
    tracer = _Tracer(fs)
    launches = outgoing_separatrices(fs)
    raw = []
    idx = 0
    for cls_idx, corners in enumerate(launches):
        for sep_idx, corner in enumerate(corners):
            res = tracer.trace(corner, budget, idx)
            if isinstance(res, Inconclusive):
                return Inconclusive(_wrap(res.traced) / lam, res.reason, res.separatrix)
            if isinstance(res, NotPeriodic):
                return res
            raw.append((res, (cls_idx, sep_idx)))
            idx += 1
    arrivals = [sc.end for sc, _start in raw]
    if len(set(arrivals)) != len(arrivals):
        raise SurfaceError("two saddle connections arrived along one separatrix")
    ginv_full = Mat2(Fraction(1, lam), 0, 0, Fraction(1, lam)) * g.inverse() if lam > 1 else g.inverse()
    cylinders = _assemble_cylinders(fs, tracer, [sc for sc, _ in raw], ginv_full)
    scs = [_finish_sc(sc, g, lam, start) for sc, start in raw]
    if lam > 1:
        cylinders = [_unscale_cylinder(c, lam) for c in cylinders]
    dec = Decomposition(s, direction, g, scs, cylinders)
    _check_decomposition(area_frame, dec)
    return dec


def _unscale_cylinder(c: "Cylinder", lam: int):
    inv = Scalar(Fraction(1, lam))
    inv2 = inv * inv
    return Cylinder(
        width=c.width * inv,
        height=c.height * inv,
        twist=c.twist * inv,
        top_word=c.top_word,
        bottom_word=c.bottom_word,
        area=c.area * inv2,
        simple=c.simple,
        pieces=c.pieces,
        crossings=c.crossings,
        top_positions=tuple(x * inv for x in c.top_positions),
        bottom_positions=tuple(x * inv for x in c.bottom_positions),
    )


def _check_decomposition(area_frame, dec):
    total = Scalar(0)
    tops = []
    bottoms = []
    for cyl in dec.cylinders:
        total = total + cyl.area
        tops.extend(cyl.top_word)
        bottoms.extend(cyl.bottom_word)
    if total != area_frame:
        raise SurfaceError("cylinder areas do not add up to the surface area")
    n = len(dec.saddle_connections)
    if sorted(tops) != list(range(n)) or sorted(bottoms) != list(range(n)):
        raise SurfaceError("boundary words do not partition the saddle connections")


# -- cylinder assembly -------------------------------------------------------


@dataclass
class _Band:
    ident: int
    poly: int
    lo: object
    hi: object
    xl_lo: object
    xr_lo: object
    xl_hi: object
    xr_hi: object
    left_edge: int
    right_edge: int

    @property
    def height(self):
        return self.hi - self.lo

    @property
    def area(self):
        return ((self.xr_lo - self.xl_lo) + (self.xr_hi - self.xl_hi)) / 2 * self.height


def _poly_x_range(vs, y):
    xs = []
    n = len(vs)
    for i in range(n):
        ax, ay = vs[i]
        bx, by = vs[(i + 1) % n]
        if ay == y:
            xs.append(ax)
        elif (ay > y) != (by > y) and by != y:
            xs.append(ax + (y - ay) * (bx - ax) / (by - ay))
    return min(xs), max(xs)


def _side_edges(vs, lo, hi):
    """Left and right polygon edges covering the open band (lo, hi)."""
    n = len(vs)
    mid = (lo + hi) / 2
    found = []
    for e in range(n):
        ax, ay = vs[e]
        bx, by = vs[(e + 1) % n]
        ylo, yhi = (ay, by) if ay < by else (by, ay)
        if ylo <= lo and hi <= yhi and ylo < yhi:
            x = ax + (mid - ay) * (bx - ax) / (by - ay)
            found.append((x, e))
    if len(found) != 2:
        raise SurfaceError("band (%s, %s) not bounded by two edges" % (lo, hi))
    found.sort(key=lambda t: t[0])
    return found[0][1], found[1][1]


def _assemble_cylinders(fs: PolygonSurface, tracer: _Tracer, scs, ginv: Mat2):
    npoly = len(fs.polygons)
    verts, trans = tracer.verts, tracer.trans
    seg_lookup = [dict() for _ in range(npoly)]
    levels = [set() for _ in range(npoly)]
    for p in range(npoly):
        for (_x, y) in verts[p]:
            levels[p].add(y)
    for sc in scs:
        for (p, y, x0, x1) in sc.segments:
            levels[p].add(y)
            seg_lookup[p].setdefault(y, []).append((x0, x1, sc.index))

    bands = []
    band_at = {}
    for p in range(npoly):
        vs = verts[p]
        ymin = min(y for (_x, y) in vs)
        ymax = max(y for (_x, y) in vs)
        cuts = sorted(y for y in levels[p] if ymin <= y <= ymax)
        ranges = {y: _poly_x_range(vs, y) for y in cuts}
        for lo, hi in zip(cuts, cuts[1:]):
            xl_lo, xr_lo = ranges[lo]
            xl_hi, xr_hi = ranges[hi]
            e_l, e_r = _side_edges(vs, lo, hi)
            band = _Band(len(bands), p, lo, hi, xl_lo, xr_lo, xl_hi, xr_hi, e_l, e_r)
            bands.append(band)
            band_at[(p, lo)] = band

    parent = list(range(len(bands)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)

    done = set()
    for p in range(npoly):
        vs = verts[p]
        n = len(vs)
        for e in range(n):
            ay = vs[e][1]
            by = vs[(e + 1) % n][1]
            if ay == by:
                continue
            q, f = fs.partner(p, e)
            if ((q, f), (p, e)) in done:
                continue
            done.add(((p, e), (q, f)))
            ylo, yhi = (ay, by) if ay < by else (by, ay)
            ty = trans[(p, e)][1]
            sub = sorted(y for y in levels[p] if ylo <= y <= yhi)
            for lo, hi in zip(sub, sub[1:]):
                here = band_at.get((p, lo))
                there = band_at.get((q, lo + ty))
                if here is None or there is None:
                    raise SurfaceError("band levels mismatch across a gluing")
                union(here.ident, there.ident)

    groups = {}
    for band in bands:
        groups.setdefault(find(band.ident), []).append(band)

    cylinders = []
    for root in sorted(groups):
        cylinders.append(_build_cylinder(fs, tracer, groups[root], band_at, seg_lookup, ginv))
    return cylinders


def _horizontal_edges_at(verts, p, y):
    """Horizontal edges of polygon p lying at level y, with x-intervals."""
    vs = verts[p]
    n = len(vs)
    out = []
    for e in range(n):
        ax, ay = vs[e]
        bx, by = vs[(e + 1) % n]
        if ay == y and by == y:
            out.append((min(ax, bx), max(ax, bx), e))
    return out


def _sc_at(fs, tracer, seg_lookup, p, y, x0, x1, via_edge=None):
    """Saddle connection id covering [x0, x1] at level y of polygon p.

    When the chord lies along a glued horizontal edge of which p is the lower
    side, the trace ran in the upper polygon; ``via_edge`` names that edge so
    the query can be translated across the gluing.
    """
    for (a, b, idx) in seg_lookup[p].get(y, ()):
        if a <= x0 and x1 <= b:
            return idx
    if via_edge is not None:
        q, _f = fs.partner(p, via_edge)
        tx, ty = tracer.trans[(p, via_edge)]
        for (a, b, idx) in seg_lookup[q].get(y + ty, ()):
            if a <= x0 + tx and x1 + tx <= b:
                return idx
    raise SurfaceError("no saddle connection covers level %s of polygon %d" % (y, p))


def _build_cylinder(fs, tracer, group, band_at, seg_lookup, ginv):
    verts, trans = tracer.verts, tracer.trans
    start = min(group, key=lambda b: b.ident)
    h = start.height
    for band in group:
        if band.height != h:
            raise SurfaceError("bands of one cylinder have different heights")

    total_area = 0
    for band in group:
        total_area = total_area + band.area
    width = total_area / h

    walk = []
    offsets = []
    cur = start
    off_x = 0
    off_y = 0
    visited = set()
    while True:
        walk.append(cur)
        offsets.append(off_x)
        visited.add(cur.ident)
        tx, ty = trans[(cur.poly, cur.right_edge)]
        q, _f = fs.partner(cur.poly, cur.right_edge)
        nxt = band_at.get((q, cur.lo + ty))
        if nxt is None:
            raise SurfaceError("cylinder walk fell off the bands")
        # a point x on the shared edge reads x + t in the next chart, so the
        # next chart sits at offset -t in the unrolled cylinder
        off_x = off_x - tx
        off_y = off_y - ty
        if nxt.ident == start.ident:
            break
        if nxt.ident in visited:
            raise SurfaceError("cylinder walk revisited a band early")
        cur = nxt
    if len(walk) != len(group):
        raise SurfaceError("cylinder walk missed %d bands" % (len(group) - len(walk)))
    if off_x != width or off_y != 0:
        raise SurfaceError("cylinder walk did not close up at its width")

    extremes = {}
    for band in group:
        if band.poly not in extremes:
            ys = [y for (_x, y) in verts[band.poly]]
            extremes[band.poly] = (min(ys), max(ys))

    top_items = []
    bottom_items = []
    for band, off in zip(walk, offsets):
        ymin, ymax = extremes[band.poly]
        if band.hi == ymax:
            for (x0, x1, e) in _horizontal_edges_at(verts, band.poly, band.hi):
                idx = _sc_at(fs, tracer, seg_lookup, band.poly, band.hi, x0, x1, via_edge=e)
                top_items.append((off + x0, x1 - x0, idx))
        elif band.xr_hi > band.xl_hi:
            idx = _sc_at(fs, tracer, seg_lookup, band.poly, band.hi, band.xl_hi, band.xr_hi)
            top_items.append((off + band.xl_hi, band.xr_hi - band.xl_hi, idx))
        if band.lo == ymin:
            for (x0, x1, _e) in _horizontal_edges_at(verts, band.poly, band.lo):
                idx = _sc_at(fs, tracer, seg_lookup, band.poly, band.lo, x0, x1)
                bottom_items.append((off + x0, x1 - x0, idx))
        elif band.xr_lo > band.xl_lo:
            idx = _sc_at(fs, tracer, seg_lookup, band.poly, band.lo, band.xl_lo, band.xr_lo)
            bottom_items.append((off + band.xl_lo, band.xr_lo - band.xl_lo, idx))

    top_word, top_positions = _boundary_word(top_items, width)
    bottom_word, bottom_positions = _boundary_word(bottom_items, width)
    # twist: offset of the top word's stored-first letter past the bottom's,
    # so a shear by t adds t*height
    twist = _mod_width(top_positions[0] - bottom_positions[0], width)

    pieces = []
    for band in group:
        quad = (
            (band.xl_lo, band.lo),
            (band.xr_lo, band.lo),
            (band.xr_hi, band.hi),
            (band.xl_hi, band.hi),
        )
        corners = tuple(
            ginv.apply(Vec2(_wrap(x), _wrap(y))) for (x, y) in _dedupe(quad)
        )
        pieces.append((band.poly, corners))

    crossings = tuple((b.poly, b.left_edge, b.right_edge) for b in walk)
    simple = len(top_word) == 1 and len(bottom_word) == 1
    return Cylinder(
        width=_wrap(width),
        height=_wrap(h),
        twist=_wrap(twist),
        top_word=top_word,
        bottom_word=bottom_word,
        area=_wrap(total_area),
        simple=simple,
        pieces=tuple(pieces),
        crossings=crossings,
        top_positions=tuple(_wrap(x) for x in top_positions),
        bottom_positions=tuple(_wrap(x) for x in bottom_positions),
    )


def _dedupe(quad):
    out = []
    for v in quad:
        if not out or out[-1] != v:
            out.append(v)
    if len(out) > 1 and out[0] == out[-1]:
        out.pop()
    return out


def _floor_ratio(x, w) -> int:
    q = x / w
    if isinstance(q, Scalar):
        return q.floor()
    return q.numerator // q.denominator


def _mod_width(x, w):
    r = x - w * _floor_ratio(x, w)
    if r < 0 or r >= w:
        raise SurfaceError("twist reduction failed")
    return r


def _boundary_word(items, width):
    """Cyclic word along one boundary circle from positioned chord pieces.

    Items are (absolute position, length, sc id); they must tile a circle of
    the given circumference, each saddle connection covering one arc.  The
    word is rotated to start at the lowest id; returned alongside are the arc
    start positions of every letter, in the shared walk coordinate.
    """
    if not items:
        raise SurfaceError("cylinder boundary with no saddle connections")
    base = items[0][0]
    normalized = sorted(
        ((_mod_width(pos - base, width), ln, idx) for pos, ln, idx in items),
        key=lambda t: (t[0], t[2]),
    )
    total = 0
    runs = []
    for pos, ln, idx in normalized:
        total = total + ln
        if runs and runs[-1][2] == idx and runs[-1][0] + runs[-1][1] == pos:
            runs[-1][1] += ln
        else:
            runs.append([pos, ln, idx])
    if total != width:
        raise SurfaceError("boundary pieces do not fill the circumference")
    if len(runs) > 1 and runs[0][2] == runs[-1][2] and runs[-1][0] + runs[-1][1] == width + runs[0][0]:
        runs[0][0] = runs[-1][0] - width
        runs[0][1] += runs[-1][1]
        runs.pop()
    ids = [r[2] for r in runs]
    if len(set(ids)) != len(ids):
        raise SurfaceError("saddle connection repeats along one boundary")
    k = ids.index(min(ids))
    word = tuple(ids[k:] + ids[:k])
    positions = tuple(base + runs[(k + i) % len(runs)][0] for i in range(len(runs)))
    return word, positions


def scan(s: PolygonSurface, slope_bound: int, budget=None, jobs=None):
    """Decompose in every primitive integer direction up to the slope bound.

    Only certified periodic directions are returned, ordered by (p, q)
    independently of the worker count.
    """
    if slope_bound < 1:
        raise ValueError("slope bound must be >= 1")
    dirs = [(0, 1)]
    for p in range(1, slope_bound + 1):
        for q in range(-slope_bound, slope_bound + 1):
            if gcd(p, abs(q)) == 1:
                dirs.append((p, q))
    dirs.sort()
    if jobs and jobs > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda d: decompose(s, d, budget), dirs))
    else:
        results = [decompose(s, d, budget) for d in dirs]
    out = []
    for d, res in zip(dirs, results):
        if isinstance(res, Decomposition):
            out.append((Direction(*d), res))
    return out
