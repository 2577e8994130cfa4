"""Acceptance suite: twelve exact criteria over the frozen corpus.

Every check is exact (no tolerances: equality of field elements and integer
counts).  Each criterion prints one PASS line when it holds; a failure shows
up as an ordinary assertion error naming the criterion.  Expensive shared
computations (corpus scans, the model-draw survey) are module-scoped
fixtures, so the whole suite stays within its wall-time budget.
"""

import random
from fractions import Fraction
from itertools import combinations

import pytest

import flatdeck as fd
from flatdeck.corpus import (
    case_config,
    figure4_pair,
    figure4_params,
    frozen_corpus,
    model_surface,
    random_params,
    regular_12gon,
    s1_surface,
)
from flatdeck.deform import (
    DeformationSpec,
    cylinder_deform,
    portion,
    predicted_circumference,
    require_periodic,
    surfaces_isomorphic,
)
from flatdeck.diagram import (
    ModelTag,
    canonical_presentation,
    classify_h4hyp,
    diagram_of,
    involution_check,
)
from flatdeck.field import Mat2, Scalar
from flatdeck.homology import ChainComplex, core_class, isotropic, relative_basis, span_rank
from flatdeck.surface import area, apply_matrix, stratum, validate
from flatdeck.trace import Decomposition, decompose, scan

from _oracles import quotient_span_rank

SEED = 20260809
DRAWS_PER_MODEL = 20
SCAN_BUDGET = Scalar(128)
EXPECTED_FIXED = {1: 5, 2: 3, 3: 1}


def _report(num, text):
    print("PASS criterion %d: %s" % (num, text))


@pytest.fixture(scope="module")
def corpus():
    return frozen_corpus()


@pytest.fixture(scope="module")
def corpus_scans(corpus):
    """slope-10 scan of every frozen corpus surface."""
    return {name: scan(s, 10, budget=SCAN_BUDGET) for name, s in corpus.items()}


@pytest.fixture(scope="module")
def model_survey():
    """Five models x twenty seeded draws, scanned at slope bound 5."""
    rng = random.Random(SEED)
    survey = []
    for tag in ModelTag:
        for _ in range(DRAWS_PER_MODEL):
            params = random_params(tag, rng, integral=True)
            s = model_surface(tag, params)
            found = scan(s, 5, budget=SCAN_BUDGET)
            survey.append((tag, s, found))
    return survey


def test_criterion_01_dimension_count(corpus):
    for name, s in corpus.items():
        _cx, basis = relative_basis(s)
        assert len(basis) == 6, name
    _report(1, "relative homology rank 6 on all %d corpus surfaces" % len(corpus))


def test_criterion_02_saddle_connection_count(corpus_scans):
    checked = 0
    for name, found in corpus_scans.items():
        for direction, dec in found:
            assert len(dec.saddle_connections) == 5, (name, direction)
            checked += 1
    assert checked > 0
    _report(2, "exactly 5 saddle connections in %d certified directions" % checked)


def test_criterion_03_masur_bound(corpus_scans):
    checked = 0
    for name, found in corpus_scans.items():
        for direction, dec in found:
            assert 1 <= len(dec.cylinders) <= 3, (name, direction)
            checked += 1
    _report(3, "at most 3 cylinders across %d slope-10 decompositions" % checked)


def test_criterion_04_classification_exhaustive(model_survey):
    total = 0
    for tag, s, found in model_survey:
        own = decompose(s, (1, 0))
        assert classify_h4hyp(diagram_of(own)) is tag
        for direction, dec in found:
            assert classify_h4hyp(diagram_of(dec)) is not None, (tag, direction)
            total += 1
    _report(
        4,
        "no Unrecognized among %d certified decompositions of %d draws"
        % (total, len(model_survey)),
    )


def test_criterion_05_hyperelliptic_symmetry(model_survey):
    total = 0
    for tag, _s, found in model_survey:
        for direction, dec in found:
            inv = involution_check(dec)
            assert inv.found, (tag, direction)
            assert inv.fixed_count == EXPECTED_FIXED[len(dec.cylinders)], (tag, direction)
            total += 1
    _report(5, "involution with fixed counts 5/3/1 on all %d decompositions" % total)


def test_criterion_06_circumference_law():
    surfaces = [("s1", s1_surface())]
    for tag in (ModelTag.THREE_CYL_I, ModelTag.THREE_CYL_II,
                ModelTag.TWO_CYL_23, ModelTag.TWO_CYL_14):
        surfaces.append((tag.value, model_surface(tag)))
    checked = 0
    for name, s in surfaces:
        dec_h = require_periodic(s, (1, 0))
        dec_v = require_periodic(s, (0, 1))
        base = [(c.height, c.width) for c in dec_h.cylinders]
        portions = {
            (i, subset): portion(dec_h, i, dec_v, subset)
            for i in range(len(dec_h.cylinders))
            for r in range(len(dec_v.cylinders) + 1)
            for subset in combinations(range(len(dec_v.cylinders)), r)
        }
        for r in range(len(dec_v.cylinders) + 1):
            for subset in combinations(range(len(dec_v.cylinders)), r):
                for t in (Fraction(1, 2), 2, 3):
                    if subset:
                        deformed = cylinder_deform(
                            s, DeformationSpec((0, 1), subset, stretch=t)
                        )
                    else:
                        deformed = s
                    measured = require_periodic(deformed, (1, 0))
                    predicted = sorted(
                        (h, predicted_circumference(w, portions[(i, subset)], Scalar(t)))
                        for i, (h, w) in enumerate(base)
                    )
                    got = sorted((c.height, c.width) for c in measured.cylinders)
                    assert got == predicted, (name, subset, t)
                    checked += 1
    _report(6, "circumference law exact in %d stretched configurations" % checked)


def test_criterion_07_deformation_consistency(corpus):
    for name, s in corpus.items():
        dec = require_periodic(s, (1, 0))
        n = len(dec.cylinders)
        sheared = cylinder_deform(s, DeformationSpec((1, 0), tuple(range(n)), shear=1))
        assert area(sheared) == area(s), name
        assert surfaces_isomorphic(sheared, apply_matrix(s, Mat2(1, 1, 0, 1))), name
    _report(7, "full-subset shear equals the unipotent on %d surfaces" % len(corpus))


def test_criterion_08_figure4():
    rng = random.Random(SEED)
    count = 0
    for tag in (ModelTag.TWO_CYL_23, ModelTag.TWO_CYL_14):
        for _ in range(5):
            params = figure4_params(tag, rng)
            before, after = figure4_pair(tag, params)
            assert len(require_periodic(before, (1, 0)).cylinders) == 2
            assert len(require_periodic(after, (1, 0)).cylinders) == 3
            count += 1
    _report(8, "two-to-three cylinder shear verified for %d seeded draws" % count)


def test_criterion_09_case_configurations():
    c1 = case_config("1")
    assert c1.portions[("C1", "D")] == Scalar(1)
    assert c1.portions[("C3", "D")] == Scalar(0)
    c2a = case_config("2A")
    assert c2a.portions[("C1", "D")] != c2a.portions[("C2", "D")]
    case_config("2B")
    c3 = case_config("3")
    assert c3.portions[("D", "C3")] == Scalar(1)
    assert c3.sheared_designated["E"].direction.pq == (0, 1)
    _report(9, "cases 1, 2A, 2B, 3 realize their incidence patterns")


def test_criterion_10_isotropy_and_rank(corpus):
    checked = 0
    for name, s in corpus.items():
        cx = ChainComplex(s)
        for direction in ((1, 0), (0, 1)):
            dec = decompose(s, direction, SCAN_BUDGET)
            if not isinstance(dec, Decomposition):
                continue
            cores = [core_class(cx, dec, i) for i in range(len(dec.cylinders))]
            assert isotropic(cores), (name, direction)
            assert span_rank(cores) <= 3, (name, direction)
            checked += 1
    s1 = s1_surface()
    cx = ChainComplex(s1)
    dv = decompose(s1, (0, 1))
    cores = [core_class(cx, dv, i) for i in range(3)]
    oracle = quotient_span_rank(
        [c.coeffs for c in cores], cx.d2, cx.edge_count
    )
    assert span_rank(cores) == oracle == 3
    _report(10, "isotropic spans of rank <= 3 in %d decompositions; oracle agrees" % checked)


def test_criterion_11_round_trips():
    rng = random.Random(SEED + 1)
    count = 0
    for tag in ModelTag:
        for _ in range(DRAWS_PER_MODEL):
            params = random_params(tag, rng)
            s = model_surface(tag, params)
            dec = require_periodic(s, (1, 0))
            diag, canon = canonical_presentation(dec)
            rebuilt = fd.build_from_diagram(diag, canon)
            dec2 = require_periodic(rebuilt, (1, 0))
            diag2, canon2 = canonical_presentation(dec2)
            assert diag2 == diag, tag
            assert canon2.lengths == canon.lengths, tag
            assert tuple(canon2.heights) == tuple(canon.heights), tag
            assert tuple(canon2.twists) == tuple(canon.twists), tag
            count += 1
    _report(11, "diagram/surface round trip is the identity for %d draws" % count)


def test_criterion_12_twelve_gon():
    g = regular_12gon()
    assert validate(g).ok
    sig = stratum(g)
    assert sig.orders == (4,) and sig.genus == 3 and sig.marked == 0
    dec = require_periodic(g, (1, 0))
    tag = classify_h4hyp(diagram_of(dec))
    assert tag is not None
    inv = involution_check(dec)
    assert inv.found
    assert inv.fixed_count == EXPECTED_FIXED[len(dec.cylinders)]
    _report(12, "regular 12-gon lies in H(4), classifies as %s over Q(√3)" % tag.value)
