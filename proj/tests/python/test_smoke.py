"""Smoke tests for the python bindings: construction, arithmetic, the
distribution pipeline and the suite entry points."""

import json

import pytest

import mtkit


def test_padic_arithmetic():
    ctx = mtkit.PadicContext(5, 2)
    assert ctx.modulus == 25
    two = mtkit.PadicInt(ctx, 2)
    assert (two * two.inverse()).value == 1
    assert two.inverse().value == 13
    assert mtkit.PadicInt(ctx, -1).value == 24
    with pytest.raises(mtkit.MtkitError):
        mtkit.PadicInt(ctx, 5).inverse()


def test_group_ring_ops():
    ctx = mtkit.PadicContext(5, 8)
    g = mtkit.FiniteAbelianGroup([5, 2])
    dg = mtkit.GroupRingElement.basis(g, ctx, g.index_of([1, 0]))
    dh = mtkit.GroupRingElement.basis(g, ctx, g.index_of([2, 1]))
    assert dg * dh == mtkit.GroupRingElement.basis(g, ctx, g.index_of([3, 1]))
    assert mtkit.is_unit(dg)
    assert mtkit.invert_element(dg) == mtkit.GroupRingElement.basis(
        g, ctx, g.index_of([4, 0])
    )
    x = mtkit.element_from_json(dg.to_json())
    assert x == dg


def test_distribution_pipeline():
    tower = mtkit.build_tower(5, 8, 2, 2, [2])
    assert mtkit.feasible_ap_residues(tower) == [3, 4]
    ctx = mtkit.PadicContext(5, 8)
    hecke = mtkit.HeckeData.from_ap(ctx, mtkit.PadicInt(ctx, 3))
    dist = mtkit.generate_distribution(tower, hecke, seed=11)
    assert mtkit.verify_norm_relations(dist, hecke)
    fam = mtkit.s_refine(dist, hecke)
    assert mtkit.verify_refined_compat(fam)
    theta = mtkit.project_theta(dist, 1, 1)
    theta_s = mtkit.project_theta_refined(fam, 1, 1)
    b, unit, const = mtkit.projected_unit(tower, hecke, 1, 1)
    assert unit
    assert theta == b * theta_s
    assert const.is_unit()


def test_fitting_and_conjectures():
    ctx = mtkit.PadicContext(5, 8)
    g = mtkit.FiniteAbelianGroup([5])
    ring = mtkit.GroupRingRing(g, ctx)
    zero = mtkit.GroupRingElement(g, ctx)
    x = mtkit.GroupRingElement.basis(g, ctx, 1) - mtkit.GroupRingElement.one(g, ctx)
    y = mtkit.GroupRingElement.one(g, ctx).scaled(mtkit.PadicInt(ctx, 7))
    diag = mtkit.PresentedModule(ring, 2, [[x, zero], [zero, y]])
    fit = mtkit.fitting_ideal(diag)
    assert mtkit.ideal_equal(fit, mtkit.IdealLattice.principal(x * y))
    member, generates = mtkit.conjecture_check(x * y, diag)
    assert member and generates
    member2, generates2 = mtkit.conjecture_check(
        (x * y).scaled(mtkit.PadicInt(ctx, 5)), diag
    )
    assert member2 and not generates2


def test_scalar_comparison():
    ctx = mtkit.PadicContext(5, 8)
    g = mtkit.FiniteAbelianGroup([5])
    x = mtkit.GroupRingElement.basis(g, ctx, 2).scaled(mtkit.PadicInt(ctx, 3))
    ok, ratio, unit = mtkit.compare_scalars(x.scaled(mtkit.PadicInt(ctx, 5)), x)
    assert ok and ratio == "5" and not unit


def test_harness_and_suites():
    cfg = mtkit.RunConfig()
    cfg.p = 5
    cfg.prec = 8
    cfg.cap_a = cfg.cap_b = 2
    cfg.delta = [2]
    cfg.seed = 3
    ok, report = mtkit.theorem71_harness(cfg)
    assert ok
    parsed = json.loads(report)
    assert parsed["summary"]["pass"]

    cfg.suites = ["determinism"]
    ok1, rep1 = mtkit.run_suites(cfg)
    ok2, rep2 = mtkit.run_suites(cfg)
    assert ok1 and ok2 and rep1 == rep2
