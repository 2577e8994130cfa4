"""Scenario corpus: model draws, figure pairs, case configurations."""

import random

import pytest

from flatdeck.deform import portion, require_periodic, surfaces_isomorphic
from flatdeck.diagram import ModelTag, classify_h4hyp, diagram_of, involution_check
from flatdeck.field import Scalar
from flatdeck.surface import stratum, validate
from flatdeck.trace import decompose
from flatdeck.corpus import (
    SCENARIOS,
    CaseConfig,
    ConstructionError,
    case_config,
    figure4_pair,
    figure4_params,
    frozen_corpus,
    model_surface,
    random_params,
    unit_params,
)

EXPECTED_FIXED = {1: 5, 2: 3, 3: 1}


@pytest.mark.parametrize("tag", list(ModelTag))
def test_model_draws_classify_and_reflect(tag):
    rng = random.Random(12345)
    for _ in range(20):
        s = model_surface(tag, random_params(tag, rng))
        assert validate(s).ok
        assert stratum(s).orders == (4,)
        dec = decompose(s, (1, 0))
        assert classify_h4hyp(diagram_of(dec)) is tag
        inv = involution_check(dec)
        assert inv.found
        assert inv.fixed_count == EXPECTED_FIXED[len(dec.cylinders)]


def test_simple_cylinder_adjacency_model_i():
    rng = random.Random(7)
    for _ in range(5):
        s = model_surface(ModelTag.THREE_CYL_I, random_params(ModelTag.THREE_CYL_I, rng))
        dec = decompose(s, (1, 0))
        simples = [i for i, c in enumerate(dec.cylinders) if c.simple]
        assert len(simples) == 1
        neighbours = dec.adjacency[simples[0]] - {simples[0]}
        assert len(neighbours) == 1


def test_simple_cylinder_adjacency_model_ii():
    rng = random.Random(8)
    for _ in range(5):
        s = model_surface(ModelTag.THREE_CYL_II, random_params(ModelTag.THREE_CYL_II, rng))
        dec = decompose(s, (1, 0))
        simples = [i for i, c in enumerate(dec.cylinders) if c.simple]
        big = next(i for i in range(3) if i not in simples)
        assert len(simples) == 2
        for s_idx in simples:
            assert dec.adjacency[s_idx] - {s_idx} == {big}
        assert simples[1] not in dec.adjacency[simples[0]]


@pytest.mark.parametrize("tag", (ModelTag.TWO_CYL_23, ModelTag.TWO_CYL_14))
def test_figure4_pair(tag):
    before, after = figure4_pair(tag)
    assert len(decompose(before, (1, 0)).cylinders) == 2
    dec = decompose(after, (1, 0))
    assert len(dec.cylinders) == 3
    assert classify_h4hyp(diagram_of(dec)) is not None


@pytest.mark.parametrize("tag", (ModelTag.TWO_CYL_23, ModelTag.TWO_CYL_14))
def test_figure4_zero_shear(tag):
    before, after = figure4_pair(tag, scale=0)
    assert surfaces_isomorphic(before, after)
    assert len(decompose(after, (1, 0)).cylinders) == 2


def test_case1_incidences():
    cfg = case_config("1")
    assert cfg.portions[("C1", "D")] == Scalar(1)
    assert cfg.portions[("C3", "D")] == Scalar(0)
    p2 = cfg.portions[("C2", "D")]
    assert Scalar(0) < p2 < Scalar(1)
    dec = decompose(cfg.surface, (1, 0))
    assert classify_h4hyp(diagram_of(dec)) is ModelTag.THREE_CYL_II


def test_case1_scaled():
    cfg = case_config("1", {"scale": 2, "h_b": 3, "tau_b": 1})
    assert cfg.portions[("C1", "D")] == Scalar(1)
    assert cfg.portions[("C3", "D")] == Scalar(0)


def test_case2a_incidences():
    cfg = case_config("2A")
    assert cfg.portions[("C1", "D")] == Scalar(0)
    assert cfg.portions[("C1", "D")] != cfg.portions[("C2", "D")]
    assert cfg.portions[("C2", "D")].sign() > 0
    assert cfg.portions[("C3", "D")].sign() > 0
    dec = decompose(cfg.surface, (1, 0))
    assert classify_h4hyp(diagram_of(dec)) is ModelTag.THREE_CYL_I


def test_case2b_incidences():
    cfg = case_config("2B")
    dec_h = require_periodic(cfg.surface, (1, 0))
    dec_t = require_periodic(cfg.surface, cfg.designated["D"].direction)
    dprime = cfg.designated["D'"]
    c2 = cfg.designated["C2"]
    assert portion(dec_t, dprime.index, dec_h, (c2.index,)) == Scalar(1)


def test_case2_variant_parameters():
    cfg = case_config("2A", {"l1": 2, "l2": 3, "l3": 1, "h_t": 1, "h_m": 2, "h_b": 1})
    assert cfg.portions[("C1", "D")] == Scalar(0)
    assert cfg.portions[("C2", "D")].sign() > 0


def test_case3_incidences():
    cfg = case_config("3")
    assert cfg.portions[("D", "C3")] == Scalar(1)
    assert cfg.sheared is not None
    e = cfg.sheared_designated["E"]
    assert e.direction.pq == (0, 1)
    dec = decompose(cfg.surface, (1, 0))
    assert classify_h4hyp(diagram_of(dec)) is ModelTag.THREE_CYL_II


def test_case3_stage_two_is_a_shear_of_stage_one():
    cfg = case_config("3")
    # the two stages share lengths and heights; only the big twist differs
    d1 = decompose(cfg.surface, (1, 0))
    d2 = decompose(cfg.sheared, (1, 0))
    assert sorted(
        (c.width, c.height) for c in d1.cylinders
    ) == sorted((c.width, c.height) for c in d2.cylinders)


def test_case3_variant_parameters():
    cfg = case_config("3", {"a": 2, "l2": 3, "h1": 1, "h3": 2, "h2": 1})
    assert cfg.portions[("D", "C3")] == Scalar(1)


def test_scenarios_build_and_validate():
    for name, sc in SCENARIOS.items():
        s = sc.build()
        assert validate(s).ok, name
        if sc.in_h4hyp:
            assert stratum(s).orders == (4,), name


def test_scenarios_expected_models():
    for name, sc in SCENARIOS.items():
        if sc.expected_model is None:
            continue
        dec = decompose(sc.build(), (1, 0))
        assert classify_h4hyp(diagram_of(dec)) is sc.expected_model, name


def test_frozen_corpus_members():
    corpus = frozen_corpus()
    assert "s1" in corpus and "twelve-gon" in corpus
    assert "torus" not in corpus
    for name, s in corpus.items():
        assert stratum(s).orders == (4,), name
