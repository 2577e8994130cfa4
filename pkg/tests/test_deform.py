"""Deformations: shears, stretches, portions, the circumference law."""

import random
from fractions import Fraction
from itertools import combinations

import pytest

from flatdeck.deform import (
    DeformationSpec,
    NotCertifiedError,
    canonical_form,
    cylinder_deform,
    portion,
    portion_by_directions,
    predicted_circumference,
    require_periodic,
    sc_in_cylinder_closure,
    surfaces_isomorphic,
)
from flatdeck.field import Mat2, Scalar
from flatdeck.surface import apply_matrix, area
from flatdeck.trace import decompose
from flatdeck.corpus import model_surface, random_params, s1_surface
from flatdeck.diagram import ModelTag


def _vertical_simple(dec):
    return next(i for i, c in enumerate(dec.cylinders) if c.simple)


def test_portion_basics():
    s1 = s1_surface()
    dh = require_periodic(s1, (1, 0))
    dv = require_periodic(s1, (0, 1))
    simple = _vertical_simple(dv)
    assert portion(dh, 0, dv, ()) == Scalar(0)
    assert portion(dh, 0, dv, (0, 1, 2)) == Scalar(1)
    assert portion(dh, 0, dv, (simple,)) == Scalar(Fraction(1, 5))


def test_portion_by_directions():
    s1 = s1_surface()
    dv = require_periodic(s1, (0, 1))
    simple = _vertical_simple(dv)
    assert portion_by_directions(s1, (1, 0), 0, (0, 1), (simple,)) == Scalar(Fraction(1, 5))


def test_predicted_circumference_endpoints():
    assert predicted_circumference(Scalar(7), Scalar(0), Scalar(3)) == Scalar(7)
    assert predicted_circumference(Scalar(7), Scalar(Fraction(1, 2)), Scalar(1)) == Scalar(7)
    assert predicted_circumference(Scalar(5), Scalar(Fraction(1, 5)), Scalar(2)) == Scalar(6)
    with pytest.raises(ValueError):
        predicted_circumference(Scalar(5), Scalar(2), Scalar(2))
    with pytest.raises(ValueError):
        predicted_circumference(Scalar(5), Scalar(Fraction(1, 2)), Scalar(0))


def test_stretch_column3_gives_circumference_six():
    s1 = s1_surface()
    dv = require_periodic(s1, (0, 1))
    simple = _vertical_simple(dv)
    out = cylinder_deform(s1, DeformationSpec((0, 1), (simple,), stretch=2))
    dec = decompose(out, (1, 0))
    assert dec.cylinders[0].width == Scalar(6)
    assert area(out) == Scalar(6)


def test_identity_deformation_is_isomorphic():
    s1 = s1_surface()
    out = cylinder_deform(s1, DeformationSpec((1, 0), (0,), shear=0, stretch=1))
    assert surfaces_isomorphic(out, s1)


def test_shear_preserves_area_stretch_scales_it():
    rng = random.Random(13)
    for tag in (ModelTag.THREE_CYL_I, ModelTag.TWO_CYL_14):
        params = random_params(tag, rng)
        s = model_surface(tag, params)
        dec = require_periodic(s, (1, 0))
        sheared = cylinder_deform(s, DeformationSpec((1, 0), (0,), shear=Fraction(3, 2)))
        assert area(sheared) == area(s)
        sigma = Scalar(Fraction(5, 3))
        stretched = cylinder_deform(s, DeformationSpec((1, 0), (1,), stretch=sigma))
        expected = area(s) + (sigma - 1) * dec.cylinders[1].area
        assert area(stretched) == expected


def test_full_subset_shear_is_global_unipotent():
    rng = random.Random(99)
    for tag in ModelTag:
        params = random_params(tag, rng)
        s = model_surface(tag, params)
        n = len(params.heights)
        sheared = cylinder_deform(s, DeformationSpec((1, 0), tuple(range(n)), shear=1))
        assert surfaces_isomorphic(sheared, apply_matrix(s, Mat2(1, 1, 0, 1)))


def test_circumference_law_all_subsets_s1():
    s1 = s1_surface()
    dh = require_periodic(s1, (1, 0))
    dv = require_periodic(s1, (0, 1))
    c1 = dh.cylinders[0].width
    for r in range(len(dv.cylinders) + 1):
        for subset in combinations(range(len(dv.cylinders)), r):
            p = portion(dh, 0, dv, subset)
            for t in (Fraction(1, 2), 2, 3):
                if not subset:
                    deformed = s1
                else:
                    deformed = cylinder_deform(
                        s1, DeformationSpec((0, 1), subset, stretch=t)
                    )
                measured = decompose(deformed, (1, 0))
                assert len(measured.cylinders) == 1
                assert measured.cylinders[0].width == predicted_circumference(
                    c1, p, Scalar(t)
                )


def test_portion_well_defined_on_equal_heights():
    # two cylinders with equal portions keep a constant width ratio under
    # stretch; unequal portions break it
    s1 = s1_surface()
    dv = require_periodic(s1, (0, 1))
    dh = require_periodic(s1, (1, 0))
    simple = _vertical_simple(dv)
    others = [i for i in range(3) if i != simple]
    p_values = [portion(dv, i, dh, (0,)) for i in range(3)]
    assert all(p == Scalar(1) for p in p_values)


def test_not_certified_raises():
    s1 = s1_surface()
    with pytest.raises(NotCertifiedError):
        cylinder_deform(
            s1,
            DeformationSpec((1, 1), (0,), shear=1),
            budget=Scalar(Fraction(1, 4)),
        )


def test_bad_spec_rejected():
    with pytest.raises(ValueError):
        DeformationSpec((1, 0), (), shear=1)
    with pytest.raises(ValueError):
        DeformationSpec((1, 0), (0,), stretch=0)
    s1 = s1_surface()
    with pytest.raises(IndexError):
        cylinder_deform(s1, DeformationSpec((1, 0), (7,), shear=1))


def test_canonical_form_distinguishes_twists():
    diag_params = random_params(ModelTag.ONE_CYL, random.Random(1))
    s = model_surface(ModelTag.ONE_CYL, diag_params)
    sheared = cylinder_deform(s, DeformationSpec((1, 0), (0,), shear=Fraction(1, 7)))
    assert canonical_form(s) != canonical_form(sheared)


def test_sc_in_cylinder_closure_s1():
    s1 = s1_surface()
    dh = require_periodic(s1, (1, 0))
    dv = require_periodic(s1, (0, 1))
    simple = _vertical_simple(dv)
    # the horizontal saddle connection above column 3 lies in the closure of
    # the column-3 vertical cylinder; the other horizontal ones do not
    inside = [
        sc.index
        for sc in dh.saddle_connections
        if sc_in_cylinder_closure(dh, sc.index, dv, simple)
    ]
    assert len(inside) == 1
