"""Root-system constants, dominance order, and partition counts."""

from __future__ import annotations

import itertools

import pytest

from modcato.rootdata import (
    build_root_system,
    dot_action,
    is_dominant,
    kostant_partition,
    leq,
    pairing,
    weight_height,
)

from oracles import partition_counts_by_genfun


@pytest.fixture(params=["A1", "A2", "B2"])
def rs(request):
    return build_root_system(request.param)


def test_unsupported_type_rejected():
    with pytest.raises(ValueError):
        build_root_system("G2")


def test_tabulated_counts(rs):
    expected = {"A1": 1, "A2": 3, "B2": 4}[rs.cartan_type]
    assert len(rs.positive_roots) == expected
    expected_w = {"A1": 2, "A2": 6, "B2": 8}[rs.cartan_type]
    assert len(rs.weyl_group) == expected_w


def test_cartan_invariants(rs):
    a = rs.cartan_matrix
    for i in range(rs.rank):
        assert a[i][i] == 2
        for j in range(rs.rank):
            if i != j:
                assert a[i][j] <= 0


def test_rho_pairs_to_one_on_simples(rs):
    for i in range(rs.rank):
        assert pairing(rs.rho, i) == 1


def test_simple_roots_are_positive_roots(rs):
    for s in rs.simple_roots:
        assert s in rs.positive_roots


def test_a1_single_root_pairing():
    rs = build_root_system("A1")
    alpha = rs.positive_roots[0]
    assert rs.root_pairing(rs.weight_of(alpha), 0) == 2


def test_a2_positive_roots():
    rs = build_root_system("A2")
    coeffs = {r.coeffs for r in rs.positive_roots}
    assert coeffs == {(1, 0), (0, 1), (1, 1)}


def test_pairing_examples():
    a1 = build_root_system("A1")
    a2 = build_root_system("A2")
    assert pairing(a1.weight(3), 0) == 3
    assert pairing(a2.weight(1, 0), 1) == 0
    assert pairing(a2.rho, 0) == 1
    with pytest.raises(IndexError):
        pairing(a1.weight(3), 1)


def test_leq_examples():
    a1 = build_root_system("A1")
    assert leq(a1.weight(0), a1.weight(2))
    assert not leq(a1.weight(1), a1.weight(2))
    a2 = build_root_system("A2")
    assert leq(a2.weight(0, 0), a2.weight(1, 1))


def test_leq_rejects_mixed_systems():
    a1 = build_root_system("A1")
    a2 = build_root_system("A2")
    with pytest.raises(ValueError):
        leq(a1.weight(0), a2.weight(0, 0))


def test_leq_is_a_partial_order_on_a2_sample():
    rs = build_root_system("A2")
    sample = [rs.weight(a, b) for a in range(-2, 3) for b in range(-2, 3)]
    for x in sample:
        assert leq(x, x)
    for x, y in itertools.permutations(sample, 2):
        if leq(x, y) and leq(y, x):
            assert x == y
    for x, y, z in itertools.product(sample, repeat=3):
        if leq(x, y) and leq(y, z):
            assert leq(x, z)


def test_is_dominant_examples():
    a2 = build_root_system("A2")
    a1 = build_root_system("A1")
    assert is_dominant(a2.weight(0, 0))
    assert not is_dominant(a2.weight(-1, 2))
    assert is_dominant(a1.weight(3))


def test_kostant_partition_examples():
    a1 = build_root_system("A1")
    assert kostant_partition(a1.root_vector(3)) == 1
    a2 = build_root_system("A2")
    assert kostant_partition(a2.root_vector(1, 1)) == 2
    assert kostant_partition(a2.root_vector(0, 0)) == 1
    assert kostant_partition(a2.root_vector(-1, 0)) == 0


def test_kostant_partition_against_generating_function(rs):
    table = partition_counts_by_genfun(rs.cartan_type, 8)
    for rv in rs.root_vectors_up_to_height(8):
        assert kostant_partition(rv) == table.get(rv.coeffs, 0), rv


def test_weyl_group_permutes_roots(rs):
    all_roots = set()
    for r in rs.positive_roots:
        all_roots.add(r.coeffs)
        all_roots.add(tuple(-c for c in r.coeffs))
    for w in rs.weyl_group:
        image = set()
        for coeffs in all_roots:
            wt = w.apply(rs.weight_of(rs.root_vector(*coeffs)))
            rv = rs.to_root_vector(wt)
            assert rv is not None
            image.add(rv.coeffs)
        assert image == all_roots


def test_weyl_group_closed_under_composition(rs):
    mats = {w.matrix for w in rs.weyl_group}
    for u in rs.weyl_group:
        for v in rs.weyl_group:
            prod = tuple(
                tuple(
                    sum(u.matrix[i][k] * v.matrix[k][j] for k in range(rs.rank))
                    for j in range(rs.rank)
                )
                for i in range(rs.rank)
            )
            assert prod in mats


def test_weyl_preserves_pairing_up_to_coroot_permutation(rs):
    # <w lam, (w alpha)^vee> = <lam, alpha^vee> for positive and negative alpha.
    signed_roots = [(k, 1) for k in range(len(rs.positive_roots))] + [
        (k, -1) for k in range(len(rs.positive_roots))
    ]
    sample = [rs.weight(*c) for c in itertools.product(range(-2, 3), repeat=rs.rank)]
    index_of = {r.coeffs: k for k, r in enumerate(rs.positive_roots)}
    for w in rs.weyl_group:
        for k, eps in signed_roots:
            root = rs.positive_roots[k] * eps
            image = rs.to_root_vector(w.apply(rs.weight_of(root)))
            sign = 1
            if not image.is_nonnegative():
                image, sign = image * -1, -1
            k_img = index_of[image.coeffs]
            for lam in sample:
                assert sign * rs.root_pairing(w.apply(lam), k_img) == eps * rs.root_pairing(lam, k)


def test_conversions_roundtrip(rs):
    for rv in rs.root_vectors_up_to_height(4):
        assert rs.to_root_vector(rs.weight_of(rv)) == rv


def test_weight_height_matches_root_height(rs):
    for rv in rs.root_vectors_up_to_height(5):
        assert weight_height(rs.weight_of(rv)) == rv.height()


def test_dot_action_of_identity(rs):
    identity = [w for w in rs.weyl_group if all(
        w.matrix[i][j] == (1 if i == j else 0) for i in range(rs.rank) for j in range(rs.rank)
    )]
    assert len(identity) == 1
    lam = rs.weight(*range(1, rs.rank + 1))
    assert dot_action(identity[0], lam) == lam
