"""Truncated formal characters.

Infinite-support characters (Verma characters and their relatives) only
ever exist here relative to an explicit :class:`TruncationBox`; the box
records where the stored coefficients are guaranteed correct.  Characters
whose true support fits entirely inside their box carry ``complete=True``,
which lets products skip the pessimistic margin check.

All values are immutable; every operation returns a fresh character.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterable, Mapping

from .errors import BoxMarginError, RegionError
from .rootdata import (
    RootSystem,
    Weight,
    height_drop,
    is_dominant,
    kostant_partition,
    leq,
    weight_height,
)


@dataclass(frozen=True)
class TruncationBox:
    """Down-region below a finite ceiling, cut off at a fixed height depth.

    A weight mu belongs to the box when mu <= c for some ceiling weight c
    with height(c - mu) <= depth.
    """

    ceiling: tuple[Weight, ...]
    depth: int

    @staticmethod
    def make(ceiling: Iterable[Weight], depth: int) -> "TruncationBox":
        ceiling = tuple(sorted(set(ceiling), key=lambda w: w.coords))
        if not ceiling:
            raise ValueError("box ceiling must be nonempty")
        if depth < 0:
            raise ValueError("box depth must be nonnegative")
        return TruncationBox(ceiling, depth)

    @property
    def system(self) -> RootSystem:
        return self.ceiling[0].system

    def contains(self, w: Weight) -> bool:
        rs = self.system
        for c in self.ceiling:
            rv = rs.to_root_vector(c - w)
            if rv is not None and rv.is_nonnegative() and rv.height() <= self.depth:
                return True
        return False

    @cached_property
    def _weights(self) -> tuple[Weight, ...]:
        rs = self.system
        seen = {}
        for c in self.ceiling:
            for rv in rs.root_vectors_up_to_height(self.depth):
                w = c - rs.weight_of(rv)
                seen[w.coords] = w
        return tuple(seen[c] for c in sorted(seen))

    def weights(self) -> tuple[Weight, ...]:
        """All box members, sorted by coordinates."""
        return self._weights

    def combine(self, other: "TruncationBox") -> "TruncationBox":
        """Result box of pointwise arithmetic: ceiling union, depth minimum."""
        return TruncationBox.make(self.ceiling + other.ceiling, min(self.depth, other.depth))

    def scale(self, factor: int) -> "TruncationBox":
        return TruncationBox.make((c * factor for c in self.ceiling), self.depth * factor)


class FormalCharacter:
    """Finite weight -> integer map together with its truncation box."""

    __slots__ = ("coeffs", "box", "complete")

    def __init__(self, coeffs: Mapping[Weight, int], box: TruncationBox, complete: bool = False):
        cleaned = {w: c for w, c in coeffs.items() if c != 0}
        for w in cleaned:
            if not box.contains(w):
                raise ValueError(f"coefficient at {w} lies outside the truncation box")
        self.coeffs: dict[Weight, int] = cleaned
        self.box = box
        self.complete = complete

    def coefficient(self, w: Weight) -> int:
        return self.coeffs.get(w, 0)

    def support(self) -> tuple[Weight, ...]:
        return tuple(sorted(self.coeffs, key=lambda w: w.coords))

    def items(self):
        return self.coeffs.items()

    def restrict(self, box: TruncationBox) -> "FormalCharacter":
        kept = {w: c for w, c in self.coeffs.items() if box.contains(w)}
        complete = self.complete and len(kept) == len(self.coeffs)
        return FormalCharacter(kept, box, complete)

    def same_on(self, other: "FormalCharacter", box: TruncationBox) -> bool:
        """Coefficientwise equality at every weight of ``box``.

        Both characters must be authoritative there: inside their own box,
        or complete.
        """
        for w in box.weights():
            for ch in (self, other):
                if not ch.complete and not ch.box.contains(w):
                    raise BoxMarginError(f"character box does not cover {w}")
            if self.coefficient(w) != other.coefficient(w):
                return False
        return True

    def serialize(self) -> list[list]:
        return [[list(w.coords), c] for w, c in sorted(self.coeffs.items(), key=lambda kv: kv[0].coords)]

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FormalCharacter)
            and self.coeffs == other.coeffs
            and self.box == other.box
        )

    def __hash__(self):
        return hash((frozenset(self.coeffs.items()), self.box))

    def __repr__(self) -> str:
        parts = " + ".join(f"{c}*e{w.coords}" for w, c in sorted(self.coeffs.items(), key=lambda kv: kv[0].coords))
        return f"FormalCharacter({parts or '0'})"


def _truncated(coeffs: Mapping[Weight, int], box: TruncationBox, complete: bool) -> FormalCharacter:
    kept = {w: c for w, c in coeffs.items() if c != 0 and box.contains(w)}
    if complete and any(c != 0 and not box.contains(w) for w, c in coeffs.items()):
        complete = False
    return FormalCharacter(kept, box, complete)


def char_single(w: Weight, box: TruncationBox, coeff: int = 1, complete: bool = True) -> FormalCharacter:
    """The character coeff * e^w."""
    if not box.contains(w):
        raise BoxMarginError(f"{w} lies outside the requested box")
    return FormalCharacter({w: coeff}, box, complete)


def char_add(a: FormalCharacter, b: FormalCharacter) -> FormalCharacter:
    if a.box.system.cartan_type != b.box.system.cartan_type:
        raise ValueError("cannot add characters over different root systems")
    box = a.box.combine(b.box)
    out = dict(a.coeffs)
    for w, c in b.coeffs.items():
        out[w] = out.get(w, 0) + c
    return _truncated(out, box, a.complete and b.complete)


def char_scale(a: FormalCharacter, c: int) -> FormalCharacter:
    return FormalCharacter({w: c * v for w, v in a.coeffs.items()}, a.box, a.complete)


def height_spread(chi: FormalCharacter) -> Fraction:
    """Height difference between the highest and lowest support weights."""
    if not chi.coeffs:
        return Fraction(0)
    heights = [weight_height(w) for w in chi.coeffs]
    return max(heights) - min(heights)


def char_multiply(a: FormalCharacter, b: FormalCharacter, box: TruncationBox) -> FormalCharacter:
    """Convolution product truncated to ``box``.

    ``b`` must have finite support (it does: it is stored).  The result is
    correct on ``box`` when every contributing weight of ``a`` lies inside
    a's box; a complete ``a`` always qualifies, otherwise a's depth must
    exceed the result depth by the height spread of b's support.
    """
    if a.box.system.cartan_type != b.box.system.cartan_type:
        raise ValueError("cannot multiply characters over different root systems")
    if not a.complete and a.box.depth < box.depth + math.ceil(height_spread(b)):
        raise BoxMarginError(
            f"multiplier box depth {a.box.depth} is too shallow for result depth "
            f"{box.depth} plus support spread {height_spread(b)}"
        )
    out: dict[Weight, int] = {}
    for w1, c1 in a.coeffs.items():
        for w2, c2 in b.coeffs.items():
            w = w1 + w2
            out[w] = out.get(w, 0) + c1 * c2
    complete = (
        a.complete
        and b.complete
        and all(box.contains(w) for w, c in out.items() if c != 0)
    )
    return _truncated(out, box, complete)


def verma_character(lam: Weight, box: TruncationBox) -> FormalCharacter:
    """Character of the Verma with highest weight ``lam``: partition counts."""
    if not box.contains(lam):
        raise BoxMarginError(f"box ceiling region does not contain {lam}")
    rs = lam.system
    out = {}
    for w in box.weights():
        rv = rs.to_root_vector(lam - w)
        if rv is not None and rv.is_nonnegative():
            p = kostant_partition(rv)
            if p:
                out[w] = p
    return FormalCharacter(out, box, complete=False)


def weyl_dimension(lam: Weight) -> int:
    """Product formula for the dimension of the characteristic-0 simple."""
    if not is_dominant(lam):
        raise ValueError(f"{lam} is not dominant")
    rs = lam.system
    num = 1
    den = 1
    for k in range(len(rs.positive_roots)):
        num *= rs.root_pairing(lam + rs.rho, k)
        den *= rs.root_pairing(rs.rho, k)
    assert num % den == 0
    return num // den


def weyl_character(lam: Weight) -> FormalCharacter:
    """Alternating-sum character of the Weyl module with highest weight lam.

    Finite support inside the hull of the Weyl orbit; complete by
    construction.
    """
    if not is_dominant(lam):
        raise ValueError(f"{lam} is not dominant")
    rs = lam.system
    depth = height_drop(lam)
    box = TruncationBox.make((lam,), depth)
    shifted = [(w.sign, w.apply(lam + rs.rho)) for w in rs.weyl_group]
    out = {}
    for w in box.weights():
        target = w + rs.rho
        total = 0
        for sign, top in shifted:
            rv = rs.to_root_vector(top - target)
            if rv is not None and rv.is_nonnegative():
                total += sign * kostant_partition(rv)
        if total:
            out[w] = total
    chi = FormalCharacter(out, box, complete=True)
    assert chi.coefficient(lam) == 1
    assert sum(chi.coeffs.values()) == weyl_dimension(lam)
    return chi


def frobenius_twist_char(chi: FormalCharacter, l: int, p: int) -> FormalCharacter:
    """Scale every weight by p^l; boxes scale along."""
    factor = p**l
    out = {w * factor: c for w, c in chi.coeffs.items()}
    return FormalCharacter(out, chi.box.scale(factor), chi.complete)


def negate_weights(chi: FormalCharacter) -> FormalCharacter:
    """Reflect a finite complete character through the origin.

    Used for the character of the plain linear dual, whose weights are the
    negatives of the original ones.
    """
    if not chi.complete:
        raise BoxMarginError("weight negation needs a complete character")
    out = {-w: c for w, c in chi.coeffs.items()}
    if out:
        tops = [w for w in out if not any(leq(w, v) and w != v for v in out)]
        spread = math.ceil(height_spread(chi))
        box = TruncationBox.make(tops, spread)
    else:
        box = chi.box
    return FormalCharacter(out, box, complete=True)


BasisLike = Callable[[Weight], FormalCharacter] | Mapping[Weight, FormalCharacter]


def peel_decompose(
    chi: FormalCharacter,
    basis: BasisLike,
    region: Iterable[Weight],
) -> dict[Weight, int]:
    """Expand ``chi`` in a triangular basis over ``region``.

    The basis characters must have leading coefficient 1 at their label and
    support otherwise strictly below it.  Weights are processed by
    non-increasing height with a lexicographic tie-break; triangularity
    makes the answer order-independent.  Raises RegionError when nonzero
    residual mass is left anywhere in chi's box after all region weights
    are peeled: the expansion would need a weight outside the region.
    """
    lookup = basis.__getitem__ if isinstance(basis, Mapping) else basis
    region = list(region)
    box_weights = set(chi.box.weights())
    for mu in region:
        if mu not in box_weights:
            raise RegionError(f"region weight {mu} lies outside the character's box")
    order = sorted(region, key=lambda w: (-weight_height(w), w.coords))
    residual = dict(chi.coeffs)
    out: dict[Weight, int] = {}
    for mu in order:
        a = residual.get(mu, 0)
        if a == 0:
            continue
        b = lookup(mu)
        if b.coefficient(mu) != 1:
            raise ValueError(f"basis character at {mu} does not have leading coefficient 1")
        if not b.complete:
            # b must be authoritative on the part of chi's box below mu,
            # otherwise the subtraction would silently miss coefficients.
            for w in box_weights:
                if leq(w, mu) and not b.box.contains(w):
                    raise BoxMarginError(
                        f"basis character at {mu} does not cover box weight {w}"
                    )
        out[mu] = a
        for w, c in b.items():
            if w != mu and not leq(w, mu):
                raise ValueError(f"basis character at {mu} has support at {w} not below it")
            if w not in box_weights:
                continue
            new = residual.get(w, 0) - a * c
            if new:
                residual[w] = new
            else:
                residual.pop(w, None)
    if residual:
        leftover = sorted(residual, key=lambda w: w.coords)
        raise RegionError(
            "residual mass outside the region (box or region too small): "
            + ", ".join(str(w) for w in leftover)
        )
    return out
