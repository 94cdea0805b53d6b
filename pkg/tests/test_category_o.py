"""Simple characters, decomposition rows, flag calculus, Steinberg check."""

from __future__ import annotations

import pytest

from modcato.category_o import (
    FlagVector,
    build_decomposition_table,
    decomposition_numbers,
    full_simple_character,
    hom_dim_projective,
    projective_verma_mult,
    q_module_mult,
    simple_character,
    steinberg_check,
    steinberg_digits,
    tensor_flag,
    truncate_flag,
    validate_table_consistency,
)
from modcato.charring import TruncationBox, char_add, char_scale, verma_character
from modcato.errors import InvalidCharacterError, PredicateError, RegionError
from modcato.rootdata import build_root_system
from modcato.topology import OpenSet

A1 = build_root_system("A1")
A2 = build_root_system("A2")


def box1(top: int, depth: int) -> TruncationBox:
    return TruncationBox.make((A1.weight(top),), depth)


def chardict(chi):
    return {w.coords[0]: c for w, c in chi.items()}


def test_simple_character_trivial_weight():
    chi = simple_character(A1.weight(0), 5, box1(0, 6)).char
    assert chardict(chi) == {0: 1}


def test_simple_character_frozen_examples():
    chi = simple_character(A1.weight(3), 3, box1(3, 6)).char
    assert chardict(chi) == {3: 1, -3: 1}
    chi2 = simple_character(A1.weight(1), 2, box1(1, 4)).char
    assert chardict(chi2) == {1: 1, -1: 1}


def test_simple_character_completeness_flag():
    full = full_simple_character(A1.weight(3), 3).char
    assert full.complete
    shallow = simple_character(A1.weight(3), 3, box1(3, 1)).char
    assert not shallow.complete


def test_simple_character_nondominant_is_infinite():
    # L(-3) at p=2 keeps picking up weights; box only windows it.
    chi = simple_character(A1.weight(-3), 2, box1(-3, 3)).char
    assert chardict(chi) == {-3: 1, -5: 1}


def test_decomposition_row_triangular_singleton():
    row = decomposition_numbers(A1.weight(4), 5, [A1.weight(4)])
    assert row == {A1.weight(4): 1}


def test_decomposition_row_a1_p2_frozen():
    region = [A1.weight(c) for c in (1, -1, -3)]
    row = decomposition_numbers(A1.weight(1), 2, region)
    assert row == {A1.weight(1): 1, A1.weight(-3): 1}


def test_decomposition_row_a1_p3_exhausted():
    region = [A1.weight(c) for c in (2, 0, -2)]
    row = decomposition_numbers(A1.weight(2), 3, region)
    assert row == {A1.weight(2): 1}


def test_decomposition_region_validation():
    with pytest.raises(RegionError):
        decomposition_numbers(A1.weight(1), 2, [A1.weight(1), A1.weight(-3)])
    with pytest.raises(RegionError):
        decomposition_numbers(A1.weight(1), 2, [A1.weight(-1)])
    with pytest.raises(RegionError):
        decomposition_numbers(A1.weight(1), 2, [A1.weight(1), A1.weight(2)])


def test_table_consistency_a1():
    table = build_decomposition_table([A1.weight(c) for c in (-3, -1, 1)], 2)
    report = validate_table_consistency(table)
    assert report.passed


def test_table_consistency_a2():
    weights = [A2.weight(0, 0), A2.weight(2, -1), A2.weight(-1, 2)]
    table = build_decomposition_table(weights, 2)
    report = validate_table_consistency(table)
    assert report.passed


def test_tensor_flag_identity_for_trivial_gamma():
    V = FlagVector({A1.weight(0): 1, A1.weight(2): 3})
    out = tensor_flag(V, A1.weight(0), 2)
    assert out == V


def test_tensor_flag_frozen_example():
    out = tensor_flag(FlagVector({A1.weight(0): 1}), A1.weight(2), 2)
    assert out == FlagVector({A1.weight(2): 1, A1.weight(-2): 1})


def test_tensor_flag_linearity_and_mass():
    single = tensor_flag(FlagVector({A1.weight(0): 1}), A1.weight(2), 3)
    double = tensor_flag(FlagVector({A1.weight(0): 2}), A1.weight(2), 3)
    assert {w: 2 * m for w, m in single.mult.items()} == double.mult
    dim = sum(c for _, c in full_simple_character(A1.weight(2), 3).char.items())
    assert double.total() == 2 * dim


def test_truncate_flag_partition():
    V = FlagVector({A1.weight(0): 1, A1.weight(2): 1})
    J = OpenSet.down_closure([A1.weight(0)])
    lower = truncate_flag(V, J, "open")
    upper = truncate_flag(V, lambda w: not J.contains(w), "closed")
    assert lower == FlagVector({A1.weight(0): 1})
    assert upper == FlagVector({A1.weight(2): 1})
    assert truncate_flag(V, lambda w: True, "open") == V


def test_truncate_flag_validates_predicates():
    V = FlagVector({A1.weight(0): 1, A1.weight(2): 1})
    J = OpenSet.down_closure([A1.weight(0)])
    with pytest.raises(PredicateError):
        truncate_flag(V, J, "closed")
    with pytest.raises(PredicateError):
        truncate_flag(V, lambda w: not J.contains(w), "open")


def test_q_module_mult_values():
    J = OpenSet.down_closure([A1.weight(3)])
    flag = q_module_mult(A1.weight(-3), J)
    assert flag == FlagVector({A1.weight(-3): 1, A1.weight(-1): 1, A1.weight(1): 1, A1.weight(3): 1})
    J2 = OpenSet.down_closure([A2.weight(1, 1)])
    flag2 = q_module_mult(A2.weight(0, 0), J2)
    assert flag2.get(A2.weight(1, 1)) == 2
    assert flag2.get(A2.weight(0, 0)) == 1
    with pytest.raises(ValueError):
        q_module_mult(A1.weight(5), J)


def test_projective_verma_mult_examples():
    J = OpenSet.down_closure([A1.weight(1)])
    flag = projective_verma_mult(A1.weight(1), J, 2)
    assert flag == FlagVector({A1.weight(1): 1})
    flag2 = projective_verma_mult(A1.weight(-3), J, 2)
    assert flag2.get(A1.weight(1)) == 1
    assert flag2.get(A1.weight(-3)) == 1
    for w in flag2.support():
        assert J.contains(w)


def test_projective_verma_mult_region_check():
    J = OpenSet.down_closure([A1.weight(1)])
    with pytest.raises(RegionError):
        projective_verma_mult(A1.weight(-3), J, 2, region=[A1.weight(-3)])


def test_hom_dim_projective_examples():
    box = box1(3, 6)
    J = OpenSet.down_closure([A1.weight(3)])
    chl = simple_character(A1.weight(3), 2, box).char
    assert hom_dim_projective(A1.weight(3), J, chl, 2) == 1
    delta = verma_character(A1.weight(3), box)
    assert hom_dim_projective(A1.weight(3), J, delta, 2) == 1
    other = simple_character(A1.weight(1), 2, box).char
    combo = char_add(char_scale(chl, 2), other)
    assert hom_dim_projective(A1.weight(3), J, combo, 2) == 2
    with pytest.raises(InvalidCharacterError):
        hom_dim_projective(A1.weight(3), J, char_scale(chl, -1), 2)


def test_steinberg_digits_examples():
    assert [d.coords for d in steinberg_digits(A1.weight(4), 3)] == [(1,), (1,)]
    assert [d.coords for d in steinberg_digits(A2.weight(1, 0), 2)] == [(1, 0)]
    assert [d.coords for d in steinberg_digits(A2.weight(2, 3), 2)] == [(0, 1), (1, 1)]
    with pytest.raises(ValueError):
        steinberg_digits(A1.weight(-1), 2)


def test_steinberg_check_examples():
    ok, diff = steinberg_check(A1.weight(4), 3, box1(4, 8))
    assert ok and not diff.coeffs
    ok2, _ = steinberg_check(A1.weight(3), 2, box1(3, 8))
    assert ok2
    ok3, _ = steinberg_check(A1.weight(1), 5, box1(1, 4))
    assert ok3  # restricted weight, single factor


def test_steinberg_check_a2():
    box = TruncationBox.make((A2.weight(2, 2),), 6)
    ok, diff = steinberg_check(A2.weight(2, 2), 2, box)
    assert ok and not diff.coeffs


def test_simple_dimensions_match_literature():
    # Frozen values from the standard small-rank tables of restricted
    # simple dimensions; fully independent of this code base.
    B2 = build_root_system("B2")

    def dim(rs, coords, p):
        chi = full_simple_character(rs.weight(*coords), p).char
        return sum(c for _, c in chi.items())

    assert dim(A2, (1, 0), 2) == 3
    assert dim(A2, (1, 1), 2) == 8      # Steinberg p=2
    assert dim(A2, (1, 1), 3) == 7      # adjoint loses the center in char 3
    assert dim(A2, (2, 2), 3) == 27     # Steinberg p=3
    assert dim(A2, (2, 0), 2) == 3      # twist of L(1,0)
    assert dim(B2, (1, 0), 2) == 4      # 5-dim vector rep degenerates
    assert dim(B2, (0, 1), 2) == 4
    assert dim(B2, (1, 1), 2) == 16     # Steinberg p=2
    assert dim(B2, (1, 0), 3) == 5
    assert dim(B2, (0, 1), 3) == 4
    assert dim(B2, (2, 2), 3) == 81     # Steinberg p=3, height-14 Gram sweep


def test_steinberg_and_frobenius_b2():
    B2 = build_root_system("B2")
    for coords, p, depth in [((2, 3), 2, 5), ((1, 2), 2, 5), ((3, 1), 3, 4)]:
        lam = B2.weight(*coords)
        ok, diff = steinberg_check(lam, p, TruncationBox.make((lam,), depth))
        assert ok, diff.serialize()
    lam = B2.weight(1, 1)
    box = TruncationBox.make((lam,), 4)
    from modcato.charring import frobenius_twist_char

    twisted = frobenius_twist_char(simple_character(lam, 2, box).char, 1, 2)
    direct = simple_character(lam * 2, 2, box.scale(2)).char
    assert twisted.same_on(direct, box.scale(2))
