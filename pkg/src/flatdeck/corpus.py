"""The executable scenario corpus: model surfaces, paired deformations, and
the specific configurations used to separate cylinder classes.

Every builder here produces exact surfaces.  A builder whose output must
realize a stated incidence pattern re-checks that pattern after construction
and raises ConstructionError naming the failed incidence, so a corpus surface
in hand is always a verified witness.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .diagram import (
    CylinderDiagram,
    DiagramParams,
    ModelTag,
    REFERENCE_DIAGRAMS,
    build_from_diagram,
)
from .deform import (
    NotCertifiedError,
    deform_decomposition,
    portion,
    require_periodic,
    sc_in_cylinder_closure,
)
from .field import Scalar, Vec2
from .surface import PolygonSurface
from .trace import Decomposition, Direction, decompose


class ConstructionError(RuntimeError):
    """A scenario's designated incidence pattern failed to materialize."""


def _s(x):
    return x if isinstance(x, Scalar) else Scalar(x)


# -- elementary surfaces -------------------------------------------------------


def torus_surface() -> PolygonSurface:
    """Unit square torus; one marked point, no zeros."""
    square = [Vec2(1, 0), Vec2(0, 1), Vec2(-1, 0), Vec2(0, -1)]
    return PolygonSurface(1, [square], [((0, 0), (0, 2)), ((0, 1), (0, 3))])


def s1_surface() -> PolygonSurface:
    """Five unit squares in a row, tops glued to bottoms by i -> 6 - i.

    Horizontally this is a single cylinder of width 5 and height 1; the
    vertical direction splits into three cylinders over the column orbits
    {1,5}, {2,4}, {3}.
    """
    square = [Vec2(1, 0), Vec2(0, 1), Vec2(-1, 0), Vec2(0, -1)]
    polys = [list(square) for _ in range(5)]
    gluings = []
    for i in range(5):
        gluings.append(((i, 1), ((i + 1) % 5, 3)))
        gluings.append(((i, 2), (4 - i, 0)))
    return PolygonSurface(1, polys, gluings)


S1_COLUMN_PERMUTATION = {1: 5, 2: 4, 3: 3, 4: 2, 5: 1}


def regular_12gon() -> PolygonSurface:
    """Regular 12-gon with side 1 and opposite sides identified, over Q(√3).

    Vertices sit at angles 15 + 30k degrees so all coordinates stay in the
    field and the top and bottom sides are horizontal.
    """
    half = Fraction(1, 2)
    big = Scalar(1, half, 3)  # cos 15 deg over the circumradius for side 1
    mid = Scalar(half, half, 3)
    low = Scalar(half)
    verts = [
        Vec2(big, low),
        Vec2(mid, mid),
        Vec2(low, big),
        Vec2(-low, big),
        Vec2(-mid, mid),
        Vec2(-big, low),
        Vec2(-big, -low),
        Vec2(-mid, -mid),
        Vec2(-low, -big),
        Vec2(low, -big),
        Vec2(mid, -mid),
        Vec2(big, -low),
    ]
    edges = [verts[(k + 1) % 12] - verts[k] for k in range(12)]
    gluings = [((0, k), (0, k + 6)) for k in range(6)]
    return PolygonSurface(3, [edges], gluings)


# -- model surfaces and parameter draws -----------------------------------------


def unit_params(tag: ModelTag) -> DiagramParams:
    diag = REFERENCE_DIAGRAMS[tag]
    lengths = {x: Scalar(1) for x in diag.letters}
    n = len(diag.cylinders)
    return DiagramParams(lengths, tuple(Scalar(1) for _ in range(n)), tuple(Scalar(0) for _ in range(n)))


_LENGTH_TIES = {
    ModelTag.ONE_CYL: {},
    ModelTag.TWO_CYL_23: {3: 2},
    ModelTag.TWO_CYL_14: {2: 1},
    ModelTag.THREE_CYL_I: {4: 1, 5: 2},
    ModelTag.THREE_CYL_II: {4: 3, 5: 2},
}


def _rand_rational(rng, lo=1, hi=10) -> Scalar:
    den = rng.randint(1, 4)
    return Scalar(Fraction(rng.randint(lo * den, hi * den), den))


def random_params(tag: ModelTag, rng: random.Random, integral: bool = False) -> DiagramParams:
    """Random draw in [1, 10] respecting the model's length balance ties.

    With ``integral`` the draw restricts to integer values (still rational in
    [1, 10]); integer surfaces keep direction scans cheap because saddle
    connections close within short budgets.
    """
    diag = REFERENCE_DIAGRAMS[tag]
    ties = _LENGTH_TIES[tag]
    draw = (lambda: Scalar(rng.randint(1, 10))) if integral else (lambda: _rand_rational(rng))
    lengths = {}
    for x in diag.letters:
        if x not in ties:
            lengths[x] = draw()
    for x, y in ties.items():
        lengths[x] = lengths[y]
    if integral:
        heights = tuple(Scalar(rng.randint(1, 2)) for _ in diag.cylinders)
    else:
        heights = tuple(_rand_rational(rng) for _ in diag.cylinders)
    twists = []
    for top, _bottom in diag.cylinders:
        w = sum((lengths[x] for x in top), Scalar(0))
        if integral:
            twists.append(Scalar(rng.randint(0, int(w.as_fraction()) - 1)))
        else:
            twists.append(w * Fraction(rng.randint(0, 99), 100))
    return DiagramParams(lengths, heights, tuple(twists))


def model_surface(tag: ModelTag, params: DiagramParams = None) -> PolygonSurface:
    """Reference build of one of the five models."""
    if params is None:
        params = unit_params(tag)
    return build_from_diagram(REFERENCE_DIAGRAMS[tag], params)


# -- figure-pair deformation -----------------------------------------------------


def _big_cylinder(dec: Decomposition) -> int:
    return max(range(len(dec.cylinders)), key=lambda i: len(dec.cylinders[i].top_word))


def _find_unique(candidates, what):
    if len(candidates) != 1:
        raise ConstructionError(
            "expected exactly one %s, found %d" % (what, len(candidates))
        )
    return candidates[0]


def figure4_params(tag: ModelTag, rng: random.Random = None) -> DiagramParams:
    """Two-cylinder parameters admitting two transverse simple cylinders
    inside the big horizontal cylinder, twists solved exactly.

    Draws stay small and integral: the paired construction re-decomposes the
    surface in three directions, and small integer data keeps those scans
    certifiable within tiny budgets.
    """
    if rng is None:
        draw = lambda: Scalar(1)
    else:
        draw = lambda: Scalar(rng.randint(1, 5))
    if tag is ModelTag.TWO_CYL_23:
        l1, l2, l4, l5 = draw(), draw(), draw(), draw()
        lengths = {1: l1, 2: l2, 3: l2, 4: l4, 5: l5}
        h_a, tau_a = draw(), Scalar(0) if rng is None else draw()
        h_b = l2  # vertical return over letter 5 forces this tie
        w_b = l2 + l4 + l5
        tau_b = _mod(l5, w_b)
        return DiagramParams(lengths, (h_a, h_b), (tau_a, tau_b))
    if tag is ModelTag.TWO_CYL_14:
        l1, l3, l5 = draw(), draw(), draw()
        lengths = {1: l1, 2: l1, 3: l3, 4: l1, 5: l5}
        h_a, h_b = draw(), draw()
        tau_a = Scalar(0) if rng is None else draw()
        w_b = l1 + l3 + l1 + l5
        tau_b = _mod(h_b + l5, w_b)
        return DiagramParams(lengths, (h_a, h_b), (tau_a, tau_b))
    raise ValueError("figure pair needs a two-cylinder model")


def figure4_pair(tag: ModelTag, params: DiagramParams = None, scale=1):
    """A two-cylinder surface and its balanced transverse-shear deformation.

    The two marked simple cylinders inside the big horizontal cylinder are
    sheared by amounts balancing to keep the big core curve horizontal; the
    result must decompose into exactly three horizontal cylinders.
    Zero scale returns an unsheared copy (still two cylinders).
    """
    if params is None:
        params = figure4_params(tag)
    scale = _s(scale)
    m0 = model_surface(tag, params)
    dec_h = require_periodic(m0, (1, 0))
    if len(dec_h.cylinders) != 2:
        raise ConstructionError("base surface is not a two-cylinder decomposition")
    big = _big_cylinder(dec_h)

    if scale.sign() == 0:
        return m0, deform_decomposition(dec_h, {})

    ladder = [
        scale * Scalar(Fraction(n, d))
        for (n, d) in ((1, 2), (1, 1), (3, 2), (1, 4), (3, 4), (2, 1), (1, 8), (1, 16))
    ]

    if tag is ModelTag.TWO_CYL_14:
        dec_t = require_periodic(m0, (1, 1))
        inside = [
            j
            for j, c in enumerate(dec_t.cylinders)
            if c.simple and portion(dec_t, j, dec_h, (big,)) == 1
        ]
        if len(inside) != 2:
            raise ConstructionError(
                "expected two transverse simple cylinders inside the big one, found %d"
                % len(inside)
            )
        j1, j2 = inside
        h1, h2 = dec_t.cylinders[j1].height, dec_t.cylinders[j2].height
        for s in ladder:
            for t1, t2 in ((h2 * s, -h1 * s), (-h2 * s, h1 * s)):
                m2 = deform_decomposition(
                    dec_t, {j1: (t1 * h1, Scalar(1)), j2: (t2 * h2, Scalar(1))}
                )
                res = decompose(m2, (1, 0))
                if isinstance(res, Decomposition) and len(res.cylinders) == 3:
                    return m0, m2
        raise ConstructionError("balanced shear did not produce three horizontal cylinders")

    # TwoCyl_23: one vertical and one slope-1 simple cylinder, sheared in turn
    dec_v = require_periodic(m0, (0, 1))
    vert = [
        j
        for j, c in enumerate(dec_v.cylinders)
        if c.simple and portion(dec_v, j, dec_h, (big,)) == 1
    ]
    j_v = _find_unique(vert, "vertical simple cylinder inside the big cylinder")
    hv = dec_v.cylinders[j_v].height
    dec_s = require_periodic(m0, (1, 1))
    slant = [
        j
        for j, c in enumerate(dec_s.cylinders)
        if c.simple and portion(dec_s, j, dec_h, (big,)) == 1
    ]
    j_s = _find_unique(slant, "slope-one simple cylinder inside the big cylinder")
    hs = dec_s.cylinders[j_s].height
    key = (dec_s.cylinders[j_s].width, hs)

    for s in ladder:
        for t_s, t_v in ((hv * s, -hs * s), (-hv * s, hs * s)):
            m1 = deform_decomposition(dec_v, {j_v: (t_v * hv, Scalar(1))})
            dec_s1 = decompose(m1, (1, 1))
            if not isinstance(dec_s1, Decomposition):
                continue
            match = [
                j
                for j, c in enumerate(dec_s1.cylinders)
                if c.simple and (c.width, c.height) == key
            ]
            if len(match) != 1:
                raise ConstructionError(
                    "could not re-identify the slope-one cylinder after the vertical shear"
                )
            m2 = deform_decomposition(dec_s1, {match[0]: (t_s * hs, Scalar(1))})
            res = decompose(m2, (1, 0))
            if isinstance(res, Decomposition) and len(res.cylinders) == 3:
                return m0, m2
    raise ConstructionError("balanced shear did not produce three horizontal cylinders")


# -- case configurations ---------------------------------------------------------


@dataclass(frozen=True)
class CylinderRef:
    direction: Direction
    index: int


@dataclass(frozen=True)
class CaseConfig:
    case: str
    surface: PolygonSurface
    designated: dict
    portions: dict
    sheared: PolygonSurface = None
    sheared_designated: dict = field(default=None)


def _mod(x: Scalar, w: Scalar) -> Scalar:
    k = (x / w).floor()
    return x - w * k


def _simple_indices(dec):
    return [i for i, c in enumerate(dec.cylinders) if c.simple]


def _self_adjacent(dec):
    out = [
        i
        for i, c in enumerate(dec.cylinders)
        if set(c.top_word) & set(c.bottom_word)
    ]
    return _find_unique(out, "self-adjacent cylinder")


def case_config(case: str, params: dict = None) -> CaseConfig:
    """Build the configuration for one of the four separation cases."""
    case = str(case).upper()
    params = dict(params or {})
    if case == "1":
        return _case1(**params)
    if case == "2A":
        return _case2(relabel=False, **params)
    if case == "2B":
        return _case2(relabel=True, **params)
    if case == "3":
        return _case3(**params)
    raise ValueError("unknown case %r" % (case,))


def _case1(scale=1, h_b=None, tau_b=None) -> CaseConfig:
    lam = _s(scale)
    h_b = lam if h_b is None else _s(h_b)
    tau_b = Scalar(0) if tau_b is None else _s(tau_b)
    diag = REFERENCE_DIAGRAMS[ModelTag.THREE_CYL_II]
    lengths = {x: lam for x in diag.letters}
    s = build_from_diagram(diag, DiagramParams(lengths, (lam, lam, h_b), (Scalar(0), Scalar(0), tau_b)))
    dec_h = require_periodic(s, (1, 0))
    dec_d = require_periodic(s, (2, -1))
    simples = _simple_indices(dec_h)
    if len(simples) != 2:
        raise ConstructionError("expected two simple horizontal cylinders")
    big = _find_unique(
        [i for i in range(len(dec_h.cylinders)) if i not in simples], "big cylinder"
    )
    c1 = d_idx = None
    for j in range(len(dec_d.cylinders)):
        for i in simples:
            if portion(dec_h, i, dec_d, (j,)) == 1:
                c1, d_idx = i, j
                break
        if c1 is not None:
            break
    if c1 is None:
        raise ConstructionError("no transverse cylinder contains a simple cylinder")
    c3 = _find_unique([i for i in simples if i != c1], "remaining simple cylinder")
    p_c1 = portion(dec_h, c1, dec_d, (d_idx,))
    p_c2 = portion(dec_h, big, dec_d, (d_idx,))
    p_c3 = portion(dec_h, c3, dec_d, (d_idx,))
    if p_c1 != 1:
        raise ConstructionError("incidence failed: closure of D must contain C1")
    if p_c3 != 0:
        raise ConstructionError("incidence failed: D must avoid C3")
    if not (Scalar(0) < p_c2 < Scalar(1)):
        raise ConstructionError("incidence failed: D must pass through C2 properly")
    horizontal = Direction(1, 0)
    transverse = Direction(2, -1)
    return CaseConfig(
        case="1",
        surface=s,
        designated={
            "C1": CylinderRef(horizontal, c1),
            "C2": CylinderRef(horizontal, big),
            "C3": CylinderRef(horizontal, c3),
            "D": CylinderRef(transverse, d_idx),
        },
        portions={("C1", "D"): p_c1, ("C2", "D"): p_c2, ("C3", "D"): p_c3},
    )


def _case2(relabel: bool, l1=1, l2=1, l3=1, h_t=1, h_m=1, h_b=1, tau_b=0) -> CaseConfig:
    l1, l2, l3 = _s(l1), _s(l2), _s(l3)
    h_t, h_m, h_b, tau_b = _s(h_t), _s(h_m), _s(h_b), _s(tau_b)
    diag = REFERENCE_DIAGRAMS[ModelTag.THREE_CYL_I]
    lengths = {1: l1, 2: l2, 3: l3, 4: l1, 5: l2}
    w_t = l1 + l3
    w_m = l2 + l1
    tau_t = _mod(h_t, w_t)
    tau_m = _mod(h_m - l2, w_m)
    s = build_from_diagram(
        diag, DiagramParams(lengths, (h_t, h_m, h_b), (tau_t, tau_m, tau_b))
    )
    dec_h = require_periodic(s, (1, 0))
    simple = _find_unique(_simple_indices(dec_h), "simple horizontal cylinder")
    top = _self_adjacent(dec_h)
    middle = _find_unique(
        [i for i in range(len(dec_h.cylinders)) if i not in (simple, top)],
        "middle cylinder",
    )
    dec_t = require_periodic(s, (1, 1))
    d_candidates = [
        j
        for j in range(len(dec_t.cylinders))
        if portion(dec_h, simple, dec_t, (j,)) == 0
        and portion(dec_h, middle, dec_t, (j,)).sign() > 0
        and portion(dec_h, top, dec_t, (j,)).sign() > 0
    ]
    d_idx = _find_unique(d_candidates, "transverse cylinder D meeting both big cylinders")
    dprime_candidates = [
        j
        for j in range(len(dec_t.cylinders))
        if j != d_idx and portion(dec_t, j, dec_h, (top,)) == 1
    ]
    dp_idx = _find_unique(dprime_candidates, "transverse cylinder D' inside the top cylinder")

    horizontal = Direction(1, 0)
    transverse = Direction(1, 1)
    if not relabel:
        names = {"C1": simple, "C2": middle, "C3": top}
    else:
        names = {"C1": simple, "C2": top, "C3": middle}
    p1 = portion(dec_h, names["C1"], dec_t, (d_idx,))
    p2 = portion(dec_h, names["C2"], dec_t, (d_idx,))
    p3 = portion(dec_h, names["C3"], dec_t, (d_idx,))
    if not relabel:
        if p1 == p2:
            raise ConstructionError("incidence failed: C1 and C2 must differ in D")
        if p2.sign() <= 0 or p3.sign() <= 0:
            raise ConstructionError("incidence failed: D must meet C2 and C3")
        if portion(dec_t, dp_idx, dec_h, (top,)) != 1:
            raise ConstructionError("incidence failed: D' must lie inside C3")
    else:
        if p2.sign() <= 0 or p3.sign() <= 0:
            raise ConstructionError("incidence failed: D must meet C2 and C3")
        if portion(dec_t, dp_idx, dec_h, (names["C2"],)) != 1:
            raise ConstructionError("incidence failed: D' must lie inside C2")
    designated = {k: CylinderRef(horizontal, v) for k, v in names.items()}
    designated["D"] = CylinderRef(transverse, d_idx)
    designated["D'"] = CylinderRef(transverse, dp_idx)
    return CaseConfig(
        case="2B" if relabel else "2A",
        surface=s,
        designated=designated,
        portions={("C1", "D"): p1, ("C2", "D"): p2, ("C3", "D"): p3},
    )


FIG8_DIAGRAM = CylinderDiagram((((1,), (4,)), ((3, 4, 2), (1, 3, 5)), ((5,), (2,))))


def _case3(a=1, l2=1, h1=1, h3=1, h2=1, tau3=None) -> CaseConfig:
    a, l2 = _s(a), _s(l2)
    h1, h3, h2 = _s(h1), _s(h3), _s(h2)
    tau3 = _s(Fraction(1, 2)) * h2 if tau3 is None else _s(tau3)
    lengths = {1: a, 2: l2, 3: a, 4: a, 5: l2}
    w_big = a + a + l2
    params1 = DiagramParams(lengths, (h1, h3, h2), (Scalar(0), _mod(a - h3, w_big), tau3))
    s1 = build_from_diagram(FIG8_DIAGRAM, params1)
    dec_h = require_periodic(s1, (1, 0))
    big = _find_unique(
        [i for i, c in enumerate(dec_h.cylinders) if not c.simple], "big cylinder"
    )
    dec_d = require_periodic(s1, (1, -1))
    d_candidates = [
        j
        for j in range(len(dec_d.cylinders))
        if portion(dec_d, j, dec_h, (big,)) == 1
    ]
    if not d_candidates:
        raise ConstructionError("incidence failed: no transverse cylinder inside C3")
    d_idx = d_candidates[0]

    params2 = DiagramParams(lengths, (h1, h3, h2), (Scalar(0), Scalar(0), tau3))
    s2 = build_from_diagram(FIG8_DIAGRAM, params2)
    dec_h2 = require_periodic(s2, (1, 0))
    big2 = _find_unique(
        [i for i, c in enumerate(dec_h2.cylinders) if not c.simple], "big cylinder"
    )
    c1_idx = _c1_of_fig8(dec_h2, big2)
    dec_v = require_periodic(s2, (0, 1))
    e_candidates = [
        j
        for j in range(len(dec_v.cylinders))
        if portion(dec_h2, c1_idx, dec_v, (j,)) == 1
    ]
    e_idx = _find_unique(e_candidates, "vertical cylinder E containing C1")
    sc1 = dec_h2.cylinders[c1_idx].top_word[0]
    self_letter = _find_unique(
        sorted(set(dec_h2.cylinders[big2].top_word) & set(dec_h2.cylinders[big2].bottom_word)),
        "self-glued saddle connection of C3",
    )
    if not sc_in_cylinder_closure(dec_h2, sc1, dec_v, e_idx):
        raise ConstructionError("incidence failed: closure of E must contain saddle connection 1")
    if not sc_in_cylinder_closure(dec_h2, self_letter, dec_v, e_idx):
        raise ConstructionError("incidence failed: closure of E must contain saddle connection 3")

    horizontal = Direction(1, 0)
    return CaseConfig(
        case="3",
        surface=s1,
        designated={
            "C3": CylinderRef(horizontal, big),
            "D": CylinderRef(Direction(1, -1), d_idx),
        },
        portions={("D", "C3"): portion(dec_d, d_idx, dec_h, (big,))},
        sheared=s2,
        sheared_designated={
            "C1": CylinderRef(horizontal, c1_idx),
            "E": CylinderRef(Direction(0, 1), e_idx),
        },
    )


def _c1_of_fig8(dec_h, big):
    """The simple cylinder whose letter precedes the self-glued one below C3."""
    cyl = dec_h.cylinders[big]
    self_letter = _find_unique(
        sorted(set(cyl.top_word) & set(cyl.bottom_word)), "self-glued saddle connection"
    )
    bottom = cyl.bottom_word
    pos = bottom.index(self_letter)
    pred = bottom[(pos - 1) % len(bottom)]
    for i, c in enumerate(dec_h.cylinders):
        if c.simple and c.top_word == (pred,):
            return i
    raise ConstructionError("could not identify the contained simple cylinder")


# -- scenario registry -----------------------------------------------------------


@dataclass(frozen=True)
class Scenario:
    name: str
    build: callable
    expected_model: ModelTag = None
    in_h4hyp: bool = True


def _model_scenario(tag):
    def build(seed=None):
        if seed is None:
            return model_surface(tag)
        return model_surface(tag, random_params(tag, random.Random(seed)))

    return build


def horizontal_presentation(s: PolygonSurface) -> PolygonSurface:
    """Isomorphic rebuild from the horizontal decomposition, one parallelogram
    per cylinder; a compact presentation for surfaces assembled by repeated
    deformation."""
    from .diagram import canonical_presentation

    dec = require_periodic(s, (1, 0))
    diag, params = canonical_presentation(dec)
    return build_from_diagram(diag, params, d=s.d)


def _fig4_scenario(tag):
    def build(seed=None):
        if seed is None:
            return horizontal_presentation(figure4_pair(tag)[1])
        rng = random.Random(seed)
        return horizontal_presentation(figure4_pair(tag, figure4_params(tag, rng))[1])

    return build


SCENARIOS = {
    "torus": Scenario("torus", lambda seed=None: torus_surface(), in_h4hyp=False),
    "s1": Scenario("s1", lambda seed=None: s1_surface(), ModelTag.ONE_CYL),
    "one-cyl": Scenario("one-cyl", _model_scenario(ModelTag.ONE_CYL), ModelTag.ONE_CYL),
    "two-cyl-23": Scenario("two-cyl-23", _model_scenario(ModelTag.TWO_CYL_23), ModelTag.TWO_CYL_23),
    "two-cyl-14": Scenario("two-cyl-14", _model_scenario(ModelTag.TWO_CYL_14), ModelTag.TWO_CYL_14),
    "three-cyl-i": Scenario("three-cyl-i", _model_scenario(ModelTag.THREE_CYL_I), ModelTag.THREE_CYL_I),
    "three-cyl-ii": Scenario("three-cyl-ii", _model_scenario(ModelTag.THREE_CYL_II), ModelTag.THREE_CYL_II),
    "twelve-gon": Scenario("twelve-gon", lambda seed=None: regular_12gon()),
    "figure4-23": Scenario("figure4-23", _fig4_scenario(ModelTag.TWO_CYL_23)),
    "figure4-14": Scenario("figure4-14", _fig4_scenario(ModelTag.TWO_CYL_14)),
    "case1": Scenario("case1", lambda seed=None: case_config("1").surface, ModelTag.THREE_CYL_II),
    "case2a": Scenario("case2a", lambda seed=None: case_config("2A").surface, ModelTag.THREE_CYL_I),
    "case3": Scenario("case3", lambda seed=None: case_config("3").surface, ModelTag.THREE_CYL_II),
    "case3-sheared": Scenario("case3-sheared", lambda seed=None: case_config("3").sheared, ModelTag.THREE_CYL_II),
}


def frozen_corpus():
    """The fixed surfaces acceptance criteria quantify over (all in H(4))."""
    return {
        name: sc.build()
        for name, sc in SCENARIOS.items()
        if sc.in_h4hyp
    }
