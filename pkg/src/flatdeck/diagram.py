"""Cylinder diagrams: combinatorics, the five-model classification, rebuilds.

A diagram records, per cylinder, the cyclic word of saddle connections along
the top boundary and along the bottom boundary.  Words are stored in a fixed
rotation (so twists have a well-defined anchor) but all comparisons are
cyclic.  The five reference diagrams are frozen fixtures: they are the
complete list of gluing patterns realized by cylinder decompositions in the
hyperelliptic component of the stratum with a single order-4 zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import permutations

from .field import Scalar, Vec2
from .surface import PolygonSurface
from .trace import Cylinder, Decomposition


class DiagramError(ValueError):
    pass


class ModelTag(Enum):
    ONE_CYL = "OneCyl"
    TWO_CYL_23 = "TwoCyl_23"
    TWO_CYL_14 = "TwoCyl_14"
    THREE_CYL_I = "ThreeCyl_I"
    THREE_CYL_II = "ThreeCyl_II"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class CylinderDiagram:
    """Per cylinder, (top word, bottom word); each letter once per side."""

    cylinders: tuple

    def __post_init__(self):
        tops = [x for t, _b in self.cylinders for x in t]
        bottoms = [x for _t, b in self.cylinders for x in b]
        if sorted(tops) != sorted(set(tops)) or sorted(bottoms) != sorted(set(bottoms)):
            raise DiagramError("a letter repeats on one side of the diagram")
        if sorted(tops) != sorted(bottoms):
            raise DiagramError("top and bottom alphabets differ")

    @property
    def letters(self):
        return sorted(x for t, _b in self.cylinders for x in t)

    @property
    def partition(self):
        """Sizes of the top words, ascending."""
        return tuple(sorted(len(t) for t, _b in self.cylinders))

    def to_text(self) -> str:
        lines = []
        for top, bottom in self.cylinders:
            lines.append(
                "top: %s | bottom: %s"
                % (" ".join(str(x) for x in top), " ".join(str(x) for x in bottom))
            )
        return "\n".join(lines)

    @staticmethod
    def from_text(text: str) -> "CylinderDiagram":
        cyls = []
        for line in text.strip().splitlines():
            left, right = line.split("|")
            top = tuple(int(x) for x in left.split(":")[1].split())
            bottom = tuple(int(x) for x in right.split(":")[1].split())
            cyls.append((top, bottom))
        return CylinderDiagram(tuple(cyls))


@dataclass
class DiagramParams:
    """Geometric data over a diagram: lengths per letter, height and twist
    per cylinder.  Twists are measured against the stored word rotations:
    the first letter of the top word starts at offset twist to the right of
    the first letter of the bottom word, so shearing by t adds t*height."""

    lengths: dict
    heights: tuple
    twists: tuple


REFERENCE_DIAGRAMS = {
    # frozen reference gluing patterns for the five models, letters 1..5
    ModelTag.ONE_CYL: CylinderDiagram((((1, 2, 3, 4, 5), (5, 4, 3, 2, 1)),)),
    ModelTag.TWO_CYL_23: CylinderDiagram((((1, 2), (1, 3)), ((3, 4, 5), (5, 4, 2)))),
    ModelTag.TWO_CYL_14: CylinderDiagram((((1,), (2,)), ((2, 3, 4, 5), (5, 4, 3, 1)))),
    ModelTag.THREE_CYL_I: CylinderDiagram(
        (((1, 3), (4, 3)), ((2, 4), (1, 5)), ((5,), (2,)))
    ),
    ModelTag.THREE_CYL_II: CylinderDiagram(
        (((3,), (4,)), ((4, 2, 1), (1, 5, 3)), ((5,), (2,)))
    ),
}


def _rotations(word):
    return [word[i:] + word[:i] for i in range(len(word))]


def diagrams_isomorphic(d1: CylinderDiagram, d2: CylinderDiagram) -> bool:
    """Letter/cylinder bijection matching cyclic words; no reversals."""
    c1, c2 = d1.cylinders, d2.cylinders
    if len(c1) != len(c2):
        return False
    profile1 = [(len(t), len(b)) for t, b in c1]
    for perm in permutations(range(len(c2))):
        if [(len(c2[p][0]), len(c2[p][1])) for p in perm] != profile1:
            continue
        if _match_letters(c1, [c2[p] for p in perm]):
            return True
    return False


def _match_letters(c1, c2):
    def extend(mapping, word_a, word_b):
        out = dict(mapping)
        for x, y in zip(word_a, word_b):
            if out.get(x, y) != y:
                return None
            out[x] = y
        if len(set(out.values())) != len(out):
            return None
        return out

    def solve(i, mapping):
        if i == len(c1):
            return True
        top1, bot1 = c1[i]
        top2, bot2 = c2[i]
        for rt in _rotations(top2):
            m1 = extend(mapping, top1, rt)
            if m1 is None:
                continue
            for rb in _rotations(bot2):
                m2 = extend(m1, bot1, rb)
                if m2 is not None and solve(i + 1, m2):
                    return True
        return False

    return solve(0, {})


def classify_h4hyp(diag: CylinderDiagram):
    """The unique matching model, or None when no model fits.

    A None return certifies the diagram cannot come from the hyperelliptic
    component: the five references are exhaustive there.
    """
    if len(diag.letters) != 5:
        raise DiagramError("classification needs exactly 5 saddle connections")
    for tag, ref in REFERENCE_DIAGRAMS.items():
        if diagrams_isomorphic(diag, ref):
            return tag
    return None


# -- extraction from decompositions -------------------------------------------


def raw_presentation(dec: Decomposition):
    """(diagram, params) in the decomposition's own labels and order."""
    cyls = tuple((c.top_word, c.bottom_word) for c in dec.cylinders)
    diag = CylinderDiagram(cyls)
    lengths = {sc.index: sc.length for sc in dec.saddle_connections}
    heights = tuple(c.height for c in dec.cylinders)
    twists = tuple(c.twist for c in dec.cylinders)
    return diag, DiagramParams(lengths, heights, twists)


def canonical_presentation(dec: Decomposition):
    """Canonically relabeled (diagram, params).

    Letters are numbered by (cylinder position, position in the top word)
    after choosing, among all cylinder orders and top-word rotations that
    leave the cylinders sorted by (top length, top word), the lexicographically
    smallest diagram encoding; remaining ties are broken by the smallest
    (lengths, heights, twists) vector, so equal canonical forms mean equal
    surfaces along this direction.
    """
    n = len(dec.cylinders)
    lengths = {sc.index: sc.length for sc in dec.saddle_connections}
    best = None
    for order in permutations(range(n)):
        for encoded in _encodings(dec, order, lengths):
            if best is None or encoded < best:
                best = encoded
    diag_part, params_part = best[0], best[1]
    diagram = CylinderDiagram(diag_part)
    m = len(diagram.letters)
    lengths_map = {i + 1: params_part[0][i] for i in range(m)}
    return diagram, DiagramParams(lengths_map, params_part[1], params_part[2])


def _encodings(dec: Decomposition, order, lengths):
    cyls = [dec.cylinders[i] for i in order]
    tops = [c.top_word for c in cyls]

    def assign(rotations):
        label = {}
        new_tops = []
        for cyl_i, rot in enumerate(rotations):
            word = tops[cyl_i][rot:] + tops[cyl_i][:rot]
            for x in word:
                if x not in label:
                    label[x] = len(label) + 1
            new_tops.append(tuple(label[x] for x in word))
        return label, new_tops

    def all_rotations(i, chosen):
        if i == len(cyls):
            yield tuple(chosen)
            return
        for r in range(len(tops[i])):
            yield from all_rotations(i + 1, chosen + [r])

    for rotations in all_rotations(0, []):
        label, new_tops = assign(rotations)
        keys = [(len(t), t) for t in new_tops]
        if keys != sorted(keys):
            continue
        new_bottoms = []
        twists = []
        for cyl, rot, new_top in zip(cyls, rotations, new_tops):
            relabeled = tuple(label[x] for x in cyl.bottom_word)
            rots = _rotations(relabeled)
            rb = rots.index(min(rots))
            new_bottoms.append(rots[rb])
            twists.append(_twist_for(cyl, rot, rb))
        diag_part = tuple(zip(new_tops, new_bottoms))
        inv = {v: k for k, v in label.items()}
        length_vec = tuple(lengths[inv[i + 1]] for i in range(len(label)))
        heights = tuple(c.height for c in cyls)
        params_part = (length_vec, heights, tuple(twists))
        yield (diag_part, params_part)


def _twist_for(cyl: Cylinder, top_rot: int, bottom_rot: int) -> Scalar:
    """Twist re-anchored to rotated stored words."""
    top_anchor = cyl.top_positions[top_rot]
    bottom_anchor = cyl.bottom_positions[bottom_rot]
    return _mod(top_anchor - bottom_anchor, cyl.width)


def _mod(x: Scalar, w: Scalar) -> Scalar:
    k = (x / w).floor()
    return x - w * k


def diagram_of(dec: Decomposition) -> CylinderDiagram:
    """Forget lengths; canonical relabeling of the gluing pattern."""
    return canonical_presentation(dec)[0]


# -- reconstruction ------------------------------------------------------------


def build_from_diagram(diag: CylinderDiagram, params: DiagramParams, d: int = None) -> PolygonSurface:
    """One parallelogram per cylinder, glued along the boundary words.

    The cylinder is cut along a geodesic joining a bottom corner to a top
    corner instead of along a vertical, so every polygon corner lands on a
    singular point and no spurious marked points appear.
    """
    lengths = {k: _scalarize(v) for k, v in params.lengths.items()}
    for k, v in lengths.items():
        if v.sign() <= 0:
            raise DiagramError("length of %r must be positive" % (k,))
    heights = [_scalarize(h) for h in params.heights]
    twists = [_scalarize(t) for t in params.twists]
    if len(heights) != len(diag.cylinders) or len(twists) != len(diag.cylinders):
        raise DiagramError("need one height and twist per cylinder")
    if d is None:
        d = 1
        for v in list(lengths.values()) + heights + twists:
            if v.d != 1:
                d = v.d

    polygons = []
    top_slot = {}
    bottom_slot = {}
    slants = []
    for ci, (top, bottom) in enumerate(diag.cylinders):
        w_top = sum((lengths[x] for x in top), Scalar(0))
        w_bot = sum((lengths[x] for x in bottom), Scalar(0))
        if w_top != w_bot:
            raise DiagramError(
                "cylinder %d: top length %s != bottom length %s" % (ci, w_top, w_bot)
            )
        h = heights[ci]
        if h.sign() <= 0:
            raise DiagramError("cylinder %d: height must be positive" % ci)
        tau = _mod(twists[ci], w_top)
        k, m = len(bottom), len(top)
        edges = []
        for x in bottom:
            edges.append(Vec2(lengths[x], Scalar(0)))
        edges.append(Vec2(tau, h))
        for x in reversed(top):
            edges.append(Vec2(-lengths[x], Scalar(0)))
        edges.append(Vec2(-tau, -h))
        polygons.append(edges)
        for j, x in enumerate(bottom):
            bottom_slot[x] = (ci, j)
        for j, x in enumerate(top):
            top_slot[x] = (ci, k + 1 + (m - 1 - j))
        slants.append(((ci, k), (ci, k + 1 + m)))

    gluings = list(slants)
    for x in diag.letters:
        gluings.append((bottom_slot[x], top_slot[x]))
    return PolygonSurface(d, polygons, gluings)


# -- hyperelliptic symmetry ----------------------------------------------------


@dataclass(frozen=True)
class InvolutionReport:
    found: bool
    mapping: tuple  # pairs (x, iota(x)) for x <= iota(x)
    fixed_letters: tuple

    @property
    def fixed_count(self):
        return len(self.fixed_letters)


def _involutions(letters):
    letters = sorted(letters)

    def rec(rest):
        if not rest:
            yield {}
            return
        x = rest[0]
        for sub in rec(rest[1:]):
            out = dict(sub)
            out[x] = x
            yield out
        for i in range(1, len(rest)):
            y = rest[i]
            for sub in rec(rest[1:i] + rest[i + 1:]):
                out = dict(sub)
                out[x] = y
                out[y] = x
                yield out

    return rec(letters)


def involution_check(dec: Decomposition) -> InvolutionReport:
    """Search for the letter involution realizing the hyperelliptic symmetry.

    The involution must send each cylinder's top word to its bottom word read
    backwards (cyclically) and must preserve saddle-connection lengths.
    Absence is a report outcome, not an error: it certifies the surface is
    not hyperelliptic.
    """
    words = [(c.top_word, c.bottom_word) for c in dec.cylinders]
    lengths = {sc.index: sc.length for sc in dec.saddle_connections}
    letters = sorted(lengths)
    for iota in _involutions(letters):
        if any(lengths[x] != lengths[iota[x]] for x in letters):
            continue
        good = True
        for top, bottom in words:
            image = tuple(iota[x] for x in reversed(top))
            if image not in _rotations(bottom):
                good = False
                break
        if good:
            pairs = tuple(sorted((x, iota[x]) for x in letters if x <= iota[x]))
            fixed = tuple(x for x in letters if iota[x] == x)
            return InvolutionReport(True, pairs, fixed)
    return InvolutionReport(False, (), ())


def _scalarize(v):
    return v if isinstance(v, Scalar) else Scalar(v)
