"""Truncated character arithmetic, Verma/Weyl characters, peel expansion."""

from __future__ import annotations

import random

import pytest

from modcato.charring import (
    TruncationBox,
    char_add,
    char_multiply,
    char_scale,
    char_single,
    frobenius_twist_char,
    height_spread,
    negate_weights,
    peel_decompose,
    verma_character,
    weyl_character,
    weyl_dimension,
)
from modcato.errors import BoxMarginError, RegionError
from modcato.rootdata import build_root_system, is_dominant

A1 = build_root_system("A1")
A2 = build_root_system("A2")
B2 = build_root_system("B2")


def a1box(top: int, depth: int) -> TruncationBox:
    return TruncationBox.make((A1.weight(top),), depth)


def test_box_membership_and_enumeration():
    box = a1box(2, 3)
    members = [w.coords[0] for w in box.weights()]
    assert members == [-4, -2, 0, 2]
    assert box.contains(A1.weight(0))
    assert not box.contains(A1.weight(1))
    assert not box.contains(A1.weight(-6))
    assert not box.contains(A1.weight(4))


def test_char_add_and_cancellation():
    box = a1box(2, 4)
    e0 = char_single(A1.weight(0), box)
    assert char_add(e0, e0).coefficient(A1.weight(0)) == 2
    e2 = char_single(A1.weight(2), box)
    mixed = char_add(char_add(e2, char_scale(e0, -1)), e0)
    assert mixed.coeffs == {A1.weight(2): 1}
    assert char_scale(char_add(e2, e0), 0).coeffs == {}


def test_char_add_combines_boxes():
    a = char_single(A1.weight(0), a1box(0, 4))
    b = char_single(A1.weight(2), a1box(2, 2))
    out = char_add(a, b)
    assert out.box.depth == 2
    assert set(out.box.ceiling) == {A1.weight(0), A1.weight(2)}


def test_char_add_rejects_mixed_systems():
    a = char_single(A1.weight(0), a1box(0, 1))
    b = char_single(A2.weight(0, 0), TruncationBox.make((A2.weight(0, 0),), 1))
    with pytest.raises(ValueError):
        char_add(a, b)


def test_char_multiply_binomial_example():
    # (e^0 + e^-alpha)^2 within depth 2
    box = a1box(0, 2)
    lhs = char_multiply(_binomial_factor(), _binomial_factor(), box)
    assert lhs.coefficient(A1.weight(0)) == 1
    assert lhs.coefficient(A1.weight(-2)) == 2
    assert lhs.coefficient(A1.weight(-4)) == 1


def _binomial_factor():
    box = a1box(0, 4)
    return char_add(char_single(A1.weight(0), box), char_single(A1.weight(-2), box))


def test_char_multiply_identity_element():
    box = a1box(0, 3)
    chi = verma_character(A1.weight(0), a1box(0, 6))
    unit = char_single(A1.weight(0), a1box(0, 0))
    prod = char_multiply(chi, unit, box)
    assert prod.coeffs == verma_character(A1.weight(0), box).coeffs


def test_char_multiply_translation_invariance():
    shift = char_single(A1.weight(2), TruncationBox.make((A1.weight(2),), 0))
    chi = verma_character(A1.weight(0), a1box(0, 6))
    box = a1box(2, 6)
    shifted = char_multiply(chi, shift, box)
    direct = verma_character(A1.weight(2), box)
    assert shifted.coeffs == direct.coeffs


def test_char_multiply_margin_guard():
    chi = verma_character(A1.weight(0), a1box(0, 2))
    wide = char_add(
        char_single(A1.weight(0), a1box(0, 4)), char_single(A1.weight(-4), a1box(0, 4))
    )
    with pytest.raises(BoxMarginError):
        char_multiply(chi, wide, a1box(0, 2))


def test_verma_character_values():
    chi = verma_character(A1.weight(0), a1box(0, 6))
    for n in range(4):
        assert chi.coefficient(A1.weight(-2 * n)) == 1
    box2 = TruncationBox.make((A2.weight(0, 0),), 4)
    chi2 = verma_character(A2.weight(0, 0), box2)
    assert chi2.coefficient(A2.weight(-1, -1)) == 2
    assert chi2.coefficient(A2.weight(0, 0)) == 1


def test_verma_character_requires_lambda_in_box():
    with pytest.raises(BoxMarginError):
        verma_character(A1.weight(4), a1box(0, 6))


def test_verma_shift_property():
    base = verma_character(A1.weight(0), a1box(0, 8))
    for lam in (A1.weight(2), A1.weight(6)):
        box = TruncationBox.make((lam,), 8)
        moved = verma_character(lam, box)
        for w, c in base.items():
            assert moved.coefficient(w + lam) == c


def test_weyl_character_rank1_string():
    chi = weyl_character(A1.weight(3))
    assert {w.coords[0]: c for w, c in chi.items()} == {3: 1, 1: 1, -1: 1, -3: 1}
    assert chi.complete


def test_weyl_character_a2_fundamental():
    chi = weyl_character(A2.weight(1, 0))
    assert len(chi.coeffs) == 3
    assert all(c == 1 for c in chi.coeffs.values())
    assert weyl_dimension(A2.weight(1, 0)) == 3


def test_weyl_character_trivial_and_errors():
    chi = weyl_character(A2.weight(0, 0))
    assert chi.coeffs == {A2.weight(0, 0): 1}
    with pytest.raises(ValueError):
        weyl_character(A2.weight(-1, 2))


def test_weyl_character_adjoint_zero_multiplicity():
    chi = weyl_character(A2.weight(1, 1))
    assert chi.coefficient(A2.weight(0, 0)) == 2
    assert sum(chi.coeffs.values()) == 8


def test_weyl_dimension_sweep_small():
    for rs in (A1, A2, B2):
        for w in rs.root_vectors_up_to_height(0):
            pass
        if rs.rank == 1:
            lams = [rs.weight(a) for a in range(7)]
        else:
            lams = [rs.weight(a, b) for a in range(7) for b in range(7)]
        for lam in lams:
            assert is_dominant(lam)
            chi = weyl_character(lam)
            assert sum(chi.coeffs.values()) == weyl_dimension(lam)


def test_b2_known_dimensions():
    assert weyl_dimension(B2.weight(1, 0)) == 5
    assert weyl_dimension(B2.weight(0, 1)) == 4
    assert weyl_dimension(B2.weight(1, 1)) == 16


def test_frobenius_twist_examples():
    box = a1box(1, 2)
    e1 = char_single(A1.weight(1), box)
    t = frobenius_twist_char(e1, 1, 3)
    assert t.coeffs == {A1.weight(3): 1}
    assert t.box.depth == 6
    pm1 = char_add(e1, char_single(A1.weight(-1), box))
    t2 = frobenius_twist_char(pm1, 2, 2)
    assert {w.coords[0] for w in t2.coeffs} == {4, -4}
    e0 = char_single(A1.weight(0), a1box(0, 0))
    assert frobenius_twist_char(e0, 1, 5).coeffs == e0.coeffs


def test_frobenius_twist_multiplicative():
    rng = random.Random(7)
    box = a1box(4, 8)
    for _ in range(10):
        a = char_add(
            char_single(A1.weight(rng.choice([0, 2, 4])), box),
            char_single(A1.weight(rng.choice([-2, 0, 2])), box),
        )
        b = char_single(A1.weight(rng.choice([0, -2])), box)
        prod_box = a1box(8, 6)
        lhs = frobenius_twist_char(char_multiply(a, b, prod_box), 1, 2)
        rhs = char_multiply(
            frobenius_twist_char(a, 1, 2), frobenius_twist_char(b, 1, 2), prod_box.scale(2)
        )
        assert lhs.coeffs == rhs.coeffs


def test_negate_weights():
    chi = weyl_character(A2.weight(1, 0))
    neg = negate_weights(chi)
    assert {(-w).coords for w in chi.coeffs} == {w.coords for w in neg.coeffs}
    assert neg.complete


def test_peel_single_basis_element():
    box = a1box(3, 5)
    basis = {A1.weight(3): verma_character(A1.weight(3), box)}
    out = peel_decompose(basis[A1.weight(3)], basis, [A1.weight(3)])
    assert out == {A1.weight(3): 1}


def test_peel_two_vermas():
    box = a1box(0, 6)
    chi = char_add(
        verma_character(A1.weight(0), box), verma_character(A1.weight(-2), box)
    )
    basis = {w: verma_character(w, box) for w in box.weights()}
    out = peel_decompose(chi, basis, box.weights())
    assert out == {A1.weight(0): 1, A1.weight(-2): 1}


def test_peel_weyl_against_verma_basis():
    # ch V(3) = ch Delta(3) - ch Delta(-5) in rank 1.
    box = a1box(3, 6)
    chi = weyl_character(A1.weight(3)).restrict(box)
    basis = {w: verma_character(w, box) for w in box.weights()}
    region = [A1.weight(c) for c in (3, 1, -1, -3, -5)]
    out = peel_decompose(chi, basis, region)
    assert out == {A1.weight(3): 1, A1.weight(-5): -1}


def test_peel_reassembly_roundtrip():
    rng = random.Random(21)
    box = TruncationBox.make((A2.weight(2, 2),), 5)
    basis = {w: verma_character(w, box) for w in box.weights()}
    weights = list(box.weights())
    for _ in range(10):
        picks = rng.sample(weights, k=min(10, len(weights)))
        coeffs = {w: rng.randint(-4, 4) for w in picks}
        chi = None
        for w, c in coeffs.items():
            term = char_scale(basis[w], c)
            chi = term if chi is None else char_add(chi, term)
        out = peel_decompose(chi, basis, weights)
        assert out == {w: c for w, c in coeffs.items() if c != 0}


def test_peel_reports_missing_region():
    box = a1box(0, 4)
    chi = char_add(
        verma_character(A1.weight(0), box), verma_character(A1.weight(-2), box)
    )
    basis = {w: verma_character(w, box) for w in box.weights()}
    with pytest.raises(RegionError):
        peel_decompose(chi, basis, [A1.weight(0)])


def test_height_spread():
    box = a1box(2, 4)
    chi = char_add(char_single(A1.weight(2), box), char_single(A1.weight(-2), box))
    assert height_spread(chi) == 2
