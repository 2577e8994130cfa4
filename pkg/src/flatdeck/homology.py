"""Integral homology of the punctured surface and the intersection pairing.

The cell structure is the polygon complex itself: vertices are the corner
identification classes, edges are the glued-edge classes, faces the polygons.
Since every vertex is a marked point of the relative pair, relative 1-cycles
are simply integer edge chains, and H_1(M, Sigma; Z) is the quotient by face
boundaries.  Intersection numbers are computed from the ribbon structure at
each vertex (the ccw fan of edge germs); no geometric perturbation is needed.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._intmat import column_echelon, frac_det, frac_rank, int_kernel, int_solve
from .field import Scalar, Vec2
from .surface import PolygonSurface, SurfaceError
from .trace import Decomposition


class ChainComplex:
    """Boundary maps and ribbon data of a surface's polygon complex."""

    def __init__(self, surface: PolygonSurface):
        self.surface = surface
        reps = []
        occ = {}
        for (a, b) in surface.gluings:
            occ[a] = (len(reps), 1)
            occ[b] = (len(reps), -1)
            reps.append(a)
        self.edge_reps = tuple(reps)
        self.edge_occ = occ

        classes = surface.vertex_classes()
        corner_class = {}
        for i, (orbit, _k) in enumerate(classes):
            for corner in orbit:
                corner_class[corner] = i
        self.corner_class = corner_class
        self.vertex_orbits = tuple(orbit for orbit, _k in classes)

        n_e = len(reps)
        n_f = len(surface.polygons)
        n_v = len(classes)
        d2 = [[0] * n_f for _ in range(n_e)]
        for p in range(n_f):
            for e in range(len(surface.polygons[p])):
                idx, sgn = occ[(p, e)]
                d2[idx][p] += sgn
        self.d2 = d2
        d1 = [[0] * n_e for _ in range(n_v)]
        for idx, (p, e) in enumerate(reps):
            n = len(surface.polygons[p])
            d1[corner_class[(p, e)]][idx] -= 1
            d1[corner_class[(p, (e + 1) % n)]][idx] += 1
        self.d1 = d1

    @property
    def edge_count(self):
        return len(self.edge_reps)

    def edge_chain(self, occurrences) -> "ClassVector":
        """Chain from signed directed-edge occurrences (p, e, multiplicity)."""
        coeffs = [0] * self.edge_count
        for (p, e, mult) in occurrences:
            idx, sgn = self.edge_occ[(p, e)]
            coeffs[idx] += sgn * mult
        return ClassVector(self, tuple(coeffs))

    def unit_class(self, idx: int) -> "ClassVector":
        coeffs = [0] * self.edge_count
        coeffs[idx] = 1
        return ClassVector(self, tuple(coeffs))


@dataclass(frozen=True)
class ClassVector:
    """Integer chain in edge-class coordinates, read modulo face boundaries."""

    complex: ChainComplex
    coeffs: tuple

    def __add__(self, other):
        self._same(other)
        return ClassVector(self.complex, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._same(other)
        return ClassVector(self.complex, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return ClassVector(self.complex, tuple(-a for a in self.coeffs))

    def __rmul__(self, k: int):
        return ClassVector(self.complex, tuple(k * a for a in self.coeffs))

    def _same(self, other):
        if self.complex is not other.complex:
            raise ValueError("classes live on different complexes")

    @property
    def is_absolute(self) -> bool:
        d1 = self.complex.d1
        return all(
            sum(row[i] * c for i, c in enumerate(self.coeffs)) == 0 for row in d1
        )

    def period(self) -> Vec2:
        s = self.complex.surface
        x = Scalar(0)
        y = Scalar(0)
        for idx, c in enumerate(self.coeffs):
            if c:
                v = s.edge_vector(*self.complex.edge_reps[idx])
                x = x + v.x * c
                y = y + v.y * c
        return Vec2(x, y)

    def same_class(self, other) -> bool:
        """Equality in H_1(M, Sigma; Z): difference is a face boundary."""
        self._same(other)
        diff = [a - b for a, b in zip(self.coeffs, other.coeffs)]
        return int_solve(self.complex.d2, diff) is not None


def relative_basis(s: PolygonSurface):
    """(complex, basis of H_1(M, Sigma; Z)) built from glued-edge classes."""
    cx = ChainComplex(s)
    h, _u, pivots = column_echelon(cx.d2)
    for (i, c) in pivots:
        if h[i][c] != 1:
            raise SurfaceError("relative homology has torsion; corrupted complex")
    pivot_rows = {i for (i, _c) in pivots}
    basis = [cx.unit_class(i) for i in range(cx.edge_count) if i not in pivot_rows]
    return cx, basis


def periods(s: PolygonSurface):
    """Period vectors of the chosen relative homology basis; exact."""
    _cx, basis = relative_basis(s)
    return [b.period() for b in basis]


# -- intersection pairing ------------------------------------------------------


def _vertex_chords(cx: ChainComplex, coeffs, orbit, species: int):
    """Resolve a chain near one vertex into chords between germ positions.

    The second chain is perturbed off the first as a genuine push-off: its
    strands enter each germ slightly earlier and leave slightly later than
    the base chain's, so a chain never crosses its own parallel copy.
    """
    ins = []
    outs = []
    for t, (p, c) in enumerate(orbit):
        idx, sgn = cx.edge_occ[(p, c)]
        flux = sgn * coeffs[idx]
        rank_in = 1 if species == 0 else 0
        rank_out = 1 if species == 0 else 2
        if flux > 0:
            outs.extend((t, rank_out, u) for u in range(flux))
        elif flux < 0:
            ins.extend((t, rank_in, u) for u in range(-flux))
    if len(ins) != len(outs):
        raise ValueError("chain is not a cycle at a vertex")
    return list(zip(ins, outs))


def _strictly_between(x, a, b):
    """Is x strictly inside the ccw arc from a to b on the germ circle?"""
    if a < b:
        return a < x < b
    return x > a or x < b


def intersection(a: ClassVector, b: ClassVector) -> int:
    """Algebraic intersection number of two absolute classes."""
    a._same(b)
    if not a.is_absolute or not b.is_absolute:
        raise ValueError("intersection needs absolute homology classes")
    cx = a.complex
    total = 0
    for orbit in cx.vertex_orbits:
        chords_a = _vertex_chords(cx, a.coeffs, orbit, 0)
        chords_b = _vertex_chords(cx, b.coeffs, orbit, 1)
        for (a_in, a_out) in chords_a:
            for (b_in, b_out) in chords_b:
                inside_in = _strictly_between(b_in, a_in, a_out)
                inside_out = _strictly_between(b_out, a_in, a_out)
                if inside_in and not inside_out:
                    total += 1
                elif inside_out and not inside_in:
                    total -= 1
    return total


def absolute_basis(cx: ChainComplex):
    """A basis of H_1(M; Z): integer kernel of d1 modulo face boundaries."""
    kernel = int_kernel(cx.d1)
    if not kernel:
        return []
    coords = []
    for col in range(len(cx.d2[0]) if cx.d2 else 0):
        target = [cx.d2[i][col] for i in range(cx.edge_count)]
        kmat = [[kernel[j][i] for j in range(len(kernel))] for i in range(cx.edge_count)]
        sol = int_solve(kmat, target)
        if sol is None:
            raise SurfaceError("face boundary escapes the cycle lattice")
        coords.append(sol)
    if coords:
        mat = [[coords[c][r] for c in range(len(coords))] for r in range(len(kernel))]
        h, _u, pivots = column_echelon(mat)
        for (i, c) in pivots:
            if h[i][c] != 1:
                raise SurfaceError("absolute homology has torsion; corrupted complex")
        pivot_rows = {i for (i, _c) in pivots}
    else:
        pivot_rows = set()
    basis = []
    for j in range(len(kernel)):
        if j not in pivot_rows:
            basis.append(ClassVector(cx, tuple(kernel[j])))
    return basis


def intersection_form(cx: ChainComplex):
    """(basis, matrix) of the symplectic intersection form on H_1(M; Z)."""
    basis = absolute_basis(cx)
    n = len(basis)
    mat = [[intersection(basis[i], basis[j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if mat[i][j] != -mat[j][i]:
                raise SurfaceError("intersection matrix is not antisymmetric")
    if n and abs(frac_det(mat)) != 1:
        raise SurfaceError("intersection form is not unimodular")
    return basis, mat


# -- cylinder core classes ----------------------------------------------------


def core_class(cx: ChainComplex, dec: Decomposition, i: int) -> ClassVector:
    """Absolute class of the i-th cylinder's core curve.

    The core is pushed onto the edge skeleton: for each polygon the core
    crosses, walk the boundary counterclockwise from the entry edge to the
    exit edge; the partial end pieces cancel across consecutive crossings,
    leaving an integer chain of full edges.
    """
    if dec.surface is not cx.surface and dec.surface != cx.surface:
        raise ValueError("decomposition and complex live on different surfaces")
    occurrences = []
    for (p, e_in, e_out) in dec.cylinders[i].crossings:
        n = len(cx.surface.polygons[p])
        j = (e_in + 1) % n
        while j != e_out:
            occurrences.append((p, j, 1))
            j = (j + 1) % n
    cls = cx.edge_chain(occurrences)
    if not cls.is_absolute:
        raise SurfaceError("core chain failed to close up")
    return cls


def span_rank(classes) -> int:
    """Rank of the integer span of the given classes in H_1(M, Sigma; Z)."""
    if not classes:
        return 0
    cx = classes[0].complex
    cols = [list(c.coeffs) for c in classes]
    d2cols = [[cx.d2[i][j] for i in range(cx.edge_count)] for j in range(len(cx.d2[0]) if cx.d2 else 0)]
    all_rows = cols + d2cols
    return frac_rank(all_rows) - frac_rank(d2cols) if d2cols else frac_rank(cols)


def isotropic(classes) -> bool:
    """True iff all pairwise intersection numbers vanish."""
    for i in range(len(classes)):
        for j in range(i + 1, len(classes)):
            if intersection(classes[i], classes[j]) != 0:
                return False
    return True


def stratum_parallel(cx: ChainComplex, dec: Decomposition, i: int, j: int) -> bool:
    """Homologous core curves: the full-stratum parallelism criterion."""
    if i == j:
        raise ValueError("a cylinder cannot be compared with itself")
    return core_class(cx, dec, i).same_class(core_class(cx, dec, j))


def free_cylinders(cx: ChainComplex, dec: Decomposition):
    """Indices of cylinders with no homologous partner in their direction."""
    cores = [core_class(cx, dec, i) for i in range(len(dec.cylinders))]
    out = []
    for i in range(len(cores)):
        if all(not cores[i].same_class(cores[j]) for j in range(len(cores)) if j != i):
            out.append(i)
    return out
