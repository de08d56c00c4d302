"""Modular Chevalley algebras: structure constants, realizations, gradings,
centralizer dimensions, and the commutation relations of the restricted
sl2-triples."""

from __future__ import annotations

import random

import numpy as np
import pytest

from thetatool.liealg import (
    LieAlgebraError,
    build_algebra,
    find_inner_coweight,
    realize_chevalley_involution,
    realize_inner,
)
from thetatool.restricted import restrict
from thetatool.satake import catalog_list, catalog_lookup


def basis_vec(alg, i):
    v = np.zeros(alg.dim, dtype=np.int64)
    v[i] = 1
    return v


def test_sl2_relations():
    alg = build_algebra("A", 1, 5)
    e = basis_vec(alg, alg.e_index(0))
    f = basis_vec(alg, alg.e_index(1))
    h = basis_vec(alg, 0)
    assert list(alg.bracket_vec(e, f)) == [1, 0, 0]
    assert list(alg.bracket_vec(h, e)) == [0, 2, 0]
    assert list(alg.bracket_vec(h, f)) == [0, 0, 3]  # -2 mod 5


def test_a2_simple_constant():
    alg = build_algebra("A", 2, 7)
    i1 = alg.rs.root_index((1, 0))
    i2 = alg.rs.root_index((0, 1))
    n = alg.structure_constant(i1, i2)
    assert n in (1, -1)
    x = basis_vec(alg, alg.e_index(i1))
    y = basis_vec(alg, alg.e_index(i2))
    assert np.any(alg.bracket_vec(x, y))


def test_g2_has_chain_constant_three():
    alg = build_algebra("G", 2, 7)
    assert any(abs(v) == 3 for v in alg._nconst.values())


def test_bad_prime_rejected():
    with pytest.raises(LieAlgebraError) as exc:
        build_algebra("G", 2, 3)
    assert "coefficient" in str(exc.value)
    with pytest.raises(LieAlgebraError):
        build_algebra("A", 2, 4)  # not prime
    with pytest.raises(LieAlgebraError):
        build_algebra("F", 4, 3)


def test_jacobi_exhaustive_small_ranks():
    # the constructor already verifies ad[x,y] = [ad x, ad y] over Z;
    # here the literal triple identity is re-checked exhaustively mod p
    for series, rank in [("A", 1), ("A", 2), ("B", 2), ("G", 2), ("A", 3), ("B", 3), ("C", 3)]:
        alg = build_algebra(series, rank, 5)
        n = alg.dim
        for i in range(n):
            xi = basis_vec(alg, i)
            for j in range(n):
                xj = basis_vec(alg, j)
                bij = alg.bracket_vec(xi, xj)
                for k in range(n):
                    xk = basis_vec(alg, k)
                    total = (
                        alg.bracket_vec(bij, xk)
                        + alg.bracket_vec(alg.bracket_vec(xj, xk), xi)
                        + alg.bracket_vec(alg.bracket_vec(xk, xi), xj)
                    )
                    assert not np.any(np.mod(total, alg.p)), (series, rank, i, j, k)


def test_jacobi_sampled_rank_up_to_six():
    for series, rank in [("A", 4), ("D", 4), ("F", 4), ("B", 5), ("D", 5), ("E", 6)]:
        alg = build_algebra(series, rank, 7)
        alg.sample_jacobi(10**4 if rank >= 4 else 10**3, seed=11)


def test_chevalley_n_property():
    # |N_{a,b}| = q + 1 is asserted at build time; exercise it explicitly
    alg = build_algebra("C", 3, 5)
    rs = alg.rs
    for (i, j), n in alg._nconst.items():
        assert abs(n) == alg._chain_down(rs.roots[j], rs.roots[i]) + 1


def test_coroot_bracket():
    alg = build_algebra("B", 2, 5)
    rs = alg.rs
    for ridx in range(rs.num_positive):
        e = basis_vec(alg, alg.e_index(ridx))
        f = basis_vec(alg, alg.e_index(ridx + rs.num_positive))
        h = alg.bracket_vec(e, f)
        expected = np.zeros(alg.dim, dtype=np.int64)
        for k, c in enumerate(rs.coroot_coords(rs.roots[ridx])):
            expected[k] = c % alg.p
        assert list(h) == list(expected)


def test_realize_inner_trivial():
    alg = build_algebra("A", 2, 5)
    pair = realize_inner(alg, (0, 0))
    assert pair.dim_p == 0 and pair.dim_k == alg.dim


def test_realize_inner_a1():
    alg = build_algebra("A", 1, 5)
    pair = realize_inner(alg, (1,))
    assert (pair.dim_k, pair.dim_p) == (1, 2)  # k = span h, p = span{e, f}


def test_realize_inner_ci_matches_kp_dimensions():
    alg = build_algebra("C", 2, 7)
    dims = catalog_lookup("C", 2, "CI").satake.kp_dimensions()
    mu = find_inner_coweight(alg, dims.k, dims.p)
    assert mu is not None
    pair = realize_inner(alg, mu)
    assert (pair.dim_k, pair.dim_p) == (dims.k, dims.p) == (4, 6)


def test_chevalley_involution_a1():
    alg = build_algebra("A", 1, 5)
    pair = realize_chevalley_involution(alg)
    assert (pair.dim_k, pair.dim_p) == (1, 2)
    # k is spanned by e - f
    v = pair.k_basis[0]
    assert v[0] == 0 and v[alg.e_index(0)] != 0 and v[alg.e_index(1)] != 0


def test_chevalley_involution_g2():
    alg = build_algebra("G", 2, 7)
    pair = realize_chevalley_involution(alg)
    assert (pair.dim_k, pair.dim_p) == (6, 8)
    pair.check_automorphism(sample=1000)
    pair.check_grading()


def test_centralizer_at_zero():
    alg = build_algebra("B", 2, 5)
    pair = realize_chevalley_involution(alg)
    zk, zp = pair.centralizer_dims(np.zeros(alg.dim, dtype=np.int64))
    assert (zk, zp) == (pair.dim_k, pair.dim_p)


def test_centralizer_identity_sampled():
    rng = random.Random(42)
    for series, rank, p in [("A", 2, 5), ("B", 2, 7), ("G", 2, 11), ("C", 3, 5)]:
        alg = build_algebra(series, rank, p)
        pair = realize_chevalley_involution(alg)
        for _ in range(100):
            x = pair.random_p_element(rng)
            zk, zp = pair.centralizer_dims(x)
            assert zk - zp == pair.dim_k - pair.dim_p


def test_centralizer_regular_semisimple_split():
    # generic toral element: (z_k, z_p) = (dim m, dim a) = (0, rank).
    # Over a small field a regular point may not exist, so search; p = 11
    # is plenty for rank 2.
    alg = build_algebra("G", 2, 11)
    pair = realize_chevalley_involution(alg)
    rs = alg.rs
    found = None
    for c0 in range(11):
        for c1 in range(11):
            if all(
                (c0 * rs.pair_coroot_simple(v, 0) + c1 * rs.pair_coroot_simple(v, 1)) % 11
                for v in rs.roots
            ):
                found = (c0, c1)
                break
        if found:
            break
    assert found is not None
    x = np.zeros(alg.dim, dtype=np.int64)
    x[0], x[1] = found
    zk, zp = pair.centralizer_dims(x)
    assert (zk, zp) == (0, 2)


def test_regularity_bound_attained():
    # min over samples of dim z_g(x) is >= dim m + dim a, attained at some x
    rng = random.Random(7)

    e = catalog_lookup("B", 3, "BI(2)")
    dims = e.satake.kp_dimensions()
    alg = build_algebra("B", 3, 11)
    mu = find_inner_coweight(alg, dims.k, dims.p)
    pair = realize_inner(alg, mu)
    best = min(
        sum(pair.centralizer_dims(pair.random_p_element(rng))) for _ in range(100)
    )
    assert best == dims.m + dims.a

    # split G2: dim m + dim a = 0 + 2
    alg = build_algebra("G", 2, 11)
    pair = realize_chevalley_involution(alg)
    best = min(
        sum(pair.centralizer_dims(pair.random_p_element(rng))) for _ in range(100)
    )
    assert best == 2


def test_commutation_relations_split_triples():
    """The sl2-triples (h_a, e_a, e_{-a}) attached to the restricted basis of
    a split realization: commuting H's, Cartan-integer weights, [E_a, F_b] = 0
    off the diagonal, the Serre-style vanishing, and restrictedness."""
    for series, rank, p in [("A", 2, 5), ("C", 3, 7), ("G", 2, 7)]:
        alg = build_algebra(series, rank, p)
        rs = alg.rs
        e_entry = [e for e in catalog_list(series, rank) if e.is_split][0]
        rrs = restrict(e_entry.satake)
        C = rrs.cartan_matrix()
        npos = rs.num_positive
        triples = []
        for j in range(rrs.r0):
            lift = rrs.pi_lifts[j]
            ridx = rs.simple_indices[lift]
            H = basis_vec(alg, lift)
            E = basis_vec(alg, alg.e_index(ridx))
            F = basis_vec(alg, alg.e_index(ridx + npos))
            triples.append((H, E, F))
        for a, (Ha, Ea, Fa) in enumerate(triples):
            assert list(alg.bracket_vec(Ea, Fa)) == list(Ha)
            for b, (Hb, Eb, Fb) in enumerate(triples):
                # (a) commuting toral elements
                assert not np.any(alg.bracket_vec(Ha, Hb))
                # (b)/(c) with E raising and F lowering: the printed relations
                # carry the opposite sign (see the decisions ledger)
                assert list(alg.bracket_vec(Ha, Eb)) == list((C[b][a] * Eb) % p)
                assert list(alg.bracket_vec(Ha, Fb)) == list((-C[b][a] * Fb) % p)
                if a != b:
                    # (d)
                    assert not np.any(alg.bracket_vec(Ea, Fb))
                    # (e) Serre-style vanishing
                    m = 1 - C[b][a]
                    v = Eb.copy()
                    for _ in range(m):
                        v = alg.bracket_vec(Ea, v)
                    assert not np.any(v)
                    v = Fb.copy()
                    for _ in range(m):
                        v = alg.bracket_vec(Fa, v)
                    assert not np.any(v)
            # (f) restrictedness through the adjoint representation
            adE = _ad_matrix(alg, Ea)
            adH = _ad_matrix(alg, Ha)
            assert not np.any(_mat_power_mod(adE, p, p))
            assert np.array_equal(_mat_power_mod(adH, p, p), adH % p)


def _ad_matrix(alg, x):
    cols = []
    for j in range(alg.dim):
        v = np.zeros(alg.dim, dtype=np.int64)
        v[j] = 1
        cols.append(alg.bracket_vec(x, v))
    return np.array(cols, dtype=np.int64).T % alg.p


def _mat_power_mod(m, k, p):
    out = np.eye(m.shape[0], dtype=np.int64)
    base = m % p
    while k:
        if k & 1:
            out = (out @ base) % p
        base = (base @ base) % p
        k >>= 1
    return out


def test_centdim_fails_outside_hypotheses():
    """Documenting the exclusion of (A4, p = 5): with p | n+1 the derived
    form has a center, no nondegenerate invariant form exists, and the
    centralizer identity genuinely fails on special elements."""
    alg = build_algebra("A", 4, 5)
    pair = realize_chevalley_involution(alg)
    rng = random.Random(2024)
    violated = False
    for _ in range(500):
        x = pair.random_p_element(rng)
        zk, zp = pair.centralizer_dims(x)
        if zk - zp != pair.dim_k - pair.dim_p:
            violated = True
            break
    assert violated, "expected a centdim violation for sl(5) over F_5"
