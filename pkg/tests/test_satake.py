"""Satake data: theta*, validation, k/p dimensions, the class catalog."""

from __future__ import annotations

import pytest

from thetatool.rootsys import build_root_system
from thetatool.satake import (
    SatakeInvolution,
    UnknownClassError,
    all_catalog_entries,
    catalog_list,
    catalog_lookup,
    class_records,
    parse_record,
    render_record,
)


def test_theta_star_split_is_negation():
    inv = catalog_lookup("C", 3, "CI").satake
    for v in inv.ambient.roots:
        assert inv.theta_star(v) == tuple(-x for x in v)


def test_theta_star_fixes_compact_roots():
    entry = catalog_lookup("E", 7, "EVII")
    inv = entry.satake
    rs = inv.ambient
    for i in inv.compact_subsystem():
        v = rs.roots[i]
        assert inv.theta_star(v) == v


def test_theta_star_aiii_on_a3():
    # AIII(1,3): I = {a2}, psi = (1 3); theta*(a1) = -(a2 + a3).
    # (With psi = id the formula would give -(a1 + a2) instead.)
    rs = build_root_system("A", 3)
    inv = SatakeInvolution(rs, compact=(1,), psi=(2, 1, 0))
    assert inv.theta_star((1, 0, 0)) == (0, -1, -1)
    assert inv.validate().ok
    inv_id = SatakeInvolution(rs, compact=(1,))
    assert inv_id.theta_star((1, 0, 0)) == (-1, -1, 0)


def test_theta_star_rejects_non_root():
    inv = catalog_lookup("A", 2, "AI").satake
    with pytest.raises(Exception):
        inv.theta_star((5, 5))


def test_validate_full_catalog():
    for e in all_catalog_entries():
        rep = e.satake.validate()
        assert rep.ok, (e.series, e.rank, e.label, rep.failures)


def test_validate_negative_fixture_compact_everything():
    # I = Delta, psi = id: passes exactly when w0 = -1 (trivial involution);
    # on A2 the fixed set overflows Phi_I and the validator reports it.
    rs = build_root_system("B", 2)
    inv = SatakeInvolution(rs, compact=(0, 1))
    assert inv.validate().ok  # theta* = id, everything compact

    rs = build_root_system("A", 2)
    inv = SatakeInvolution(rs, compact=(0, 1))
    rep = inv.validate()
    assert not rep.ok
    assert any("Phi_I" in f for f in rep.failures)


def test_validate_psi_not_stabilizing_i():
    rs = build_root_system("A", 3)
    inv = SatakeInvolution(rs, compact=(0,), psi=(2, 1, 0))
    rep = inv.validate()
    assert any("stabilize" in f for f in rep.failures)


def test_validate_psi_not_cartan():
    rs = build_root_system("B", 2)
    inv = SatakeInvolution(rs, compact=(), psi=(1, 0))  # swaps long and short
    rep = inv.validate()
    assert any("Cartan" in f for f in rep.failures)


def test_kp_dimensions_split_g2():
    dims = catalog_lookup("G", 2, "G").satake.kp_dimensions()
    assert (dims.g, dims.k, dims.p) == (14, 6, 8)


def test_kp_dimensions_split_e7():
    dims = catalog_lookup("E", 7, "EV").satake.kp_dimensions()
    assert (dims.g, dims.k, dims.p) == (133, 63, 70)


def test_kp_dimensions_trivial_involution():
    rs = build_root_system("B", 2)
    dims = SatakeInvolution(rs, compact=(0, 1)).kp_dimensions()
    assert dims.p == 0 and dims.a == 0 and dims.k == dims.g


def test_kp_dimensions_identity_over_catalog():
    for e in all_catalog_entries():
        d = e.satake.kp_dimensions()
        assert d.k + d.p == d.g
        assert d.m - d.a == d.k - d.p


def test_split_entries_have_full_split_rank():
    for e in all_catalog_entries():
        if e.is_split:
            assert e.satake.kp_dimensions().a == e.rank
        if e.is_quasi_split:
            assert not e.compact


def test_catalog_lookup():
    assert catalog_lookup("E", 7, "EV").fixed_algebra_name == "sl(8)"
    assert catalog_lookup("E", 7, "EV").is_split
    for n in (2, 3, 5, 8):
        assert catalog_lookup("C", n, "CI").fixed_algebra_name == f"gl({n})"
    with pytest.raises(UnknownClassError) as exc:
        catalog_lookup("A", 2, "ZZ")
    assert "AI" in exc.value.available


def test_split_names_match_published_table():
    expected = {
        ("A", 4): "so(5)",
        ("B", 4): "so(4)+so(5)",
        ("C", 4): "gl(4)",
        ("D", 6): "so(6)+so(6)",
        ("E", 6): "sp(8)",
        ("E", 7): "sl(8)",
        ("E", 8): "so(16)",
        ("F", 4): "sp(6)+sl(2)",
        ("G", 2): "sl(2)+sl(2)",
    }
    for (series, rank), k_name in expected.items():
        split = [e for e in catalog_list(series, rank) if e.is_split]
        assert len(split) == 1
        assert split[0].fixed_algebra_name == k_name


def test_catalog_record_round_trip():
    for series, rank in [("A", 5), ("D", 6), ("E", 7)]:
        for rec in class_records(series, rank):
            line = render_record(series, rank, rec)
            s, r, parsed = parse_record(line)
            assert (s, r) == (series, rank)
            assert parsed == rec


def test_catalog_file_matches_generator():
    # the shipped table is exactly what the family templates produce
    from thetatool.satake import render_catalog
    import importlib.resources

    text = importlib.resources.files("thetatool").joinpath("catalog.txt").read_text()
    assert text == render_catalog()


def test_catalog_extends_beyond_rank_8():
    entries = catalog_list("B", 10)
    assert {e.label for e in entries} == {f"BI({m})" for m in range(1, 11)}
    assert catalog_lookup("C", 9, "CII(4)").satake.validate().ok


def test_out_class():
    assert catalog_lookup("A", 3, "AI").satake.out_class() == (2, 1, 0)  # outer
    assert catalog_lookup("A", 3, "AIII(2,2)").satake.out_class() == (0, 1, 2)
    assert catalog_lookup("D", 4, "DI(3)").satake.out_class() == (0, 1, 3, 2)
    assert catalog_lookup("E", 6, "EIV").satake.out_class() == (5, 1, 4, 3, 2, 0)
