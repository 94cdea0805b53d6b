"""Character-level category O data.

Simple characters from contravariant-form ranks, decomposition numbers by
triangular peeling, Verma-flag vectors under tensor and truncation
functors, projective multiplicities through reciprocity, and the base-p
tensor factorization check for finite-dimensional simples.

Dual Vermas never appear as objects: their characters equal the Verma
characters, and every statement made here factors through characters.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from . import cache as cache_store
from .charring import (
    FormalCharacter,
    TruncationBox,
    char_add,
    char_multiply,
    char_scale,
    char_single,
    frobenius_twist_char,
    peel_decompose,
    verma_character,
)
from .errors import (
    BoxMarginError,
    ExactnessError,
    InvalidCharacterError,
    RegionError,
)
from .hypalg import SizeGuard, simple_weight_dim
from .reporting import Report
from .rootdata import (
    Weight,
    height_drop,
    is_dominant,
    kostant_partition,
    leq,
)
from .topology import (
    OpenSet,
    is_locally_closed,
    validate_closed_predicate,
    validate_open_predicate,
)


@dataclass(frozen=True)
class SimpleCharacter:
    """Character of the simple head of a Verma, within a box."""

    lam: Weight
    p: int
    char: FormalCharacter


class FlagVector:
    """Finite weight -> nonnegative-integer record of Verma multiplicities."""

    __slots__ = ("mult",)

    def __init__(self, mult: Mapping[Weight, int]):
        cleaned = {}
        for w, m in mult.items():
            if m < 0:
                raise ValueError(f"flag multiplicity at {w} is negative")
            if m:
                cleaned[w] = m
        self.mult = cleaned

    def get(self, w: Weight) -> int:
        return self.mult.get(w, 0)

    def items(self):
        return sorted(self.mult.items(), key=lambda kv: kv[0].coords)

    def support(self) -> tuple[Weight, ...]:
        return tuple(sorted(self.mult, key=lambda w: w.coords))

    def total(self) -> int:
        return sum(self.mult.values())

    def translate(self, gamma: Weight) -> "FlagVector":
        return FlagVector({w + gamma: m for w, m in self.mult.items()})

    def restrict(self, pred: Callable[[Weight], bool]) -> "FlagVector":
        return FlagVector({w: m for w, m in self.mult.items() if pred(w)})

    def serialize(self) -> list[list]:
        return [[list(w.coords), m] for w, m in self.items()]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FlagVector) and self.mult == other.mult

    def __hash__(self):
        return hash(frozenset(self.mult.items()))

    def __repr__(self) -> str:
        inner = ", ".join(f"{w.coords}: {m}" for w, m in self.items())
        return f"FlagVector({{{inner}}})"


@dataclass(frozen=True)
class DecompositionTable:
    """Composition multiplicities of Vermas over a locally closed region."""

    p: int
    region: tuple[Weight, ...]
    entries: Mapping[tuple[Weight, Weight], int]

    def entry(self, mu: Weight, lam: Weight) -> int:
        return self.entries.get((mu, lam), 0)

    def translate(self, gamma: Weight) -> "DecompositionTable":
        return DecompositionTable(
            self.p,
            tuple(sorted((w + gamma for w in self.region), key=lambda w: w.coords)),
            {(mu + gamma, lam + gamma): v for (mu, lam), v in self.entries.items()},
        )

    def serialize(self) -> list[list]:
        triples = [
            [list(mu.coords), list(lam.coords), v]
            for (mu, lam), v in self.entries.items()
        ]
        return sorted(triples)


_SIMPLE_CACHE: dict = {}


def full_support_box(lam: Weight) -> TruncationBox:
    """Box holding the entire hull of the Weyl orbit of a dominant weight."""
    return TruncationBox.make((lam,), height_drop(lam))


def _covers_full_support(lam: Weight, box: TruncationBox) -> bool:
    rs = lam.system
    for rv in rs.root_vectors_up_to_height(height_drop(lam)):
        if not box.contains(lam - rs.weight_of(rv)):
            return False
    return True


def simple_character(
    lam: Weight, p: int, box: TruncationBox, *, guard: SizeGuard | None = None
) -> SimpleCharacter:
    """Assemble ch L(lam) on a box from per-weight-space Gram ranks."""
    if not box.contains(lam):
        raise BoxMarginError(f"box does not contain the highest weight {lam}")
    key = (lam, p, box)
    hit = _SIMPLE_CACHE.get(key)
    if hit is not None:
        return hit
    rs = lam.system
    coeffs = {}
    for w in box.weights():
        rv = rs.to_root_vector(lam - w)
        if rv is None or not rv.is_nonnegative():
            continue
        dim = simple_weight_dim(lam, rv, p, guard=guard)
        if dim:
            coeffs[w] = dim
    complete = is_dominant(lam) and _covers_full_support(lam, box)
    chi = FormalCharacter(coeffs, box, complete)
    assert chi.coefficient(lam) == 1
    result = SimpleCharacter(lam, p, chi)
    _SIMPLE_CACHE[key] = result
    return result


def full_simple_character(lam: Weight, p: int, *, guard: SizeGuard | None = None) -> SimpleCharacter:
    """Complete character of the finite-dimensional simple at dominant lam."""
    if not is_dominant(lam):
        raise ValueError(f"{lam} is not dominant")
    return simple_character(lam, p, full_support_box(lam), guard=guard)


def _down_region(mu: Weight, depth: int) -> tuple[Weight, ...]:
    return TruncationBox.make((mu,), depth).weights()


def decomposition_numbers(
    mu: Weight,
    p: int,
    region: Iterable[Weight],
    *,
    guard: SizeGuard | None = None,
) -> dict[Weight, int]:
    """One row of composition multiplicities by peeling simple characters.

    The region must be the full down-set below mu at some box depth; a
    missing intermediate weight would silently drop composition factors,
    so anything short of downward-complete is rejected.
    """
    rs = mu.system
    region = list(region)
    if mu not in region:
        raise RegionError("region must contain the highest weight itself")
    depths = []
    for w in region:
        rv = rs.to_root_vector(mu - w)
        if rv is None or not rv.is_nonnegative():
            raise RegionError(f"region weight {w} is not below {mu}")
        depths.append(rv.height())
    depth = max(depths)
    box = TruncationBox.make((mu,), depth)
    if set(region) != set(box.weights()):
        raise RegionError(
            "region is not downward-complete below the highest weight"
        )
    payload = (
        f"mu={','.join(map(str, mu.coords))};depth={depth}"
    )
    cached = cache_store.get_value("decomp_row", rs.cartan_type, p, payload)
    if cached is not None:
        return {
            rs.weight(*coords): v for coords, v in json.loads(cached)
        }
    chi = verma_character(mu, box)

    def basis(w: Weight) -> FormalCharacter:
        return simple_character(w, p, box, guard=guard).char

    row = peel_decompose(chi, basis, region)
    for w, a in row.items():
        if a < 0:
            raise ExactnessError(
                f"negative multiplicity {a} at {w} while decomposing {mu}"
            )
    assert row.get(mu) == 1
    cache_store.put_value(
        "decomp_row",
        rs.cartan_type,
        p,
        payload,
        json.dumps(sorted([list(w.coords), v] for w, v in row.items())),
    )
    return row


def build_decomposition_table(
    weights: Iterable[Weight],
    p: int,
    *,
    depth: int | None = None,
    guard: SizeGuard | None = None,
) -> DecompositionTable:
    """Region-bounded table [Delta(mu) : L(lam)] over a locally closed set."""
    rs = None
    weights = sorted(set(weights), key=lambda w: w.coords)
    if not weights:
        raise ValueError("table region must be nonempty")
    rs = weights[0].system
    if not is_locally_closed(weights):
        raise ValueError("table region must be locally closed")
    entries: dict[tuple[Weight, Weight], int] = {}
    for mu in weights:
        gaps = [
            rs.to_root_vector(mu - lam).height()
            for lam in weights
            if leq(lam, mu)
        ]
        row_depth = max(gaps)
        if depth is not None:
            row_depth = max(row_depth, depth)
        row = decomposition_numbers(mu, p, _down_region(mu, row_depth), guard=guard)
        for lam in weights:
            if leq(lam, mu) and row.get(lam, 0):
                entries[(mu, lam)] = row[lam]
    return DecompositionTable(p, tuple(weights), entries)


def validate_table_consistency(
    table: DecompositionTable, *, guard: SizeGuard | None = None
) -> Report:
    """Character identity dim Delta(mu)_nu = sum_lam [Delta(mu):L(lam)] dim L(lam)_nu."""
    report = Report(f"character consistency over {len(table.region)} weights, p={table.p}")
    rs = table.region[0].system
    for mu in table.region:
        below = [nu for nu in table.region if leq(nu, mu)]
        if not below:
            continue
        depth = max(rs.to_root_vector(mu - nu).height() for nu in below)
        box = TruncationBox.make((mu,), depth)
        delta = verma_character(mu, box)
        for nu in below:
            lhs = delta.coefficient(nu)
            rhs = 0
            for lam in table.region:
                coeff = table.entry(mu, lam)
                if coeff and leq(nu, lam):
                    rhs += coeff * simple_character(lam, table.p, box, guard=guard).char.coefficient(nu)
            report.record(
                f"dim Delta({mu.coords})_{nu.coords}", lhs, rhs
            )
    return report


def _flag_tensor_char(V: FlagVector, chi: FormalCharacter) -> FlagVector:
    out: dict[Weight, int] = {}
    for lam, m in V.mult.items():
        for s, c in chi.items():
            w = lam + s
            out[w] = out.get(w, 0) + m * c
    return FlagVector(out)


def tensor_flag(
    V: FlagVector,
    gamma: Weight,
    p: int,
    box: TruncationBox | None = None,
    *,
    guard: SizeGuard | None = None,
) -> FlagVector:
    """Flag of M (x) L(gamma): convolve multiplicities with dim L(gamma)_*."""
    if not is_dominant(gamma):
        raise ValueError(f"{gamma} is not dominant")
    if box is None:
        box = full_support_box(gamma)
    elif not _covers_full_support(gamma, box):
        raise BoxMarginError("box does not cover the full support of L(gamma)")
    chi = simple_character(gamma, p, box, guard=guard).char
    out = _flag_tensor_char(V, chi)
    assert out.total() == V.total() * sum(c for _, c in chi.items())
    return out


def truncate_flag(
    V: FlagVector,
    region_test,
    kind: str,
) -> FlagVector:
    """Restrict a flag vector to an open (quotient) or closed (sub) region."""
    pred = region_test.contains if hasattr(region_test, "contains") else region_test
    if kind == "open":
        validate_open_predicate(pred, V.support())
    elif kind == "closed":
        validate_closed_predicate(pred, V.support())
    else:
        raise ValueError("kind must be 'open' or 'closed'")
    return V.restrict(pred)


def q_module_mult(lam: Weight, J: OpenSet) -> FlagVector:
    """Verma multiplicities of the universal projective attached to lam in
    the truncation to J: partition counts over the finite up-set."""
    if not J.contains(lam):
        raise ValueError(f"{lam} does not lie in the open set")
    rs = lam.system
    out = {}
    for mu in J.up_set(lam):
        rv = rs.to_root_vector(mu - lam)
        out[mu] = kostant_partition(rv)
    flag = FlagVector(out)
    assert flag.get(lam) == 1
    return flag


def projective_verma_mult(
    lam: Weight,
    J: OpenSet,
    p: int,
    region: Iterable[Weight] | None = None,
    *,
    guard: SizeGuard | None = None,
) -> FlagVector:
    """Verma multiplicities of the projective cover of L(lam) in the
    truncation to J, through reciprocity: [Delta(mu) : L(lam)] for mu in J."""
    if not J.contains(lam):
        raise ValueError(f"{lam} does not lie in the open set")
    rs = lam.system
    ups = J.up_set(lam)
    if region is not None:
        missing = set(ups) - set(region)
        if missing:
            raise RegionError(f"region misses up-set weights {sorted(w.coords for w in missing)}")
    out = {}
    for mu in ups:
        gap = rs.to_root_vector(mu - lam).height()
        row = decomposition_numbers(mu, p, _down_region(mu, gap), guard=guard)
        val = row.get(lam, 0)
        if val:
            out[mu] = val
    flag = FlagVector(out)
    assert flag.get(lam) == 1
    return flag


def hom_dim_projective(
    lam: Weight,
    J: OpenSet,
    chi_M: FormalCharacter,
    p: int,
    *,
    guard: SizeGuard | None = None,
) -> int:
    """Multiplicity [M : L(lam)], read off as a Hom-space dimension from the
    projective cover; computed by peeling chi_M into simple characters."""
    if not J.contains(lam):
        raise ValueError(f"{lam} does not lie in the open set")
    region = chi_M.box.weights()

    def basis(w: Weight) -> FormalCharacter:
        return simple_character(w, p, chi_M.box, guard=guard).char

    coeffs = peel_decompose(chi_M, basis, region)
    negative = {w: a for w, a in coeffs.items() if a < 0}
    if negative:
        raise InvalidCharacterError(
            f"input is not a genuine character; negative multiplicities {negative}"
        )
    return coeffs.get(lam, 0)


def steinberg_digits(lam: Weight, p: int) -> tuple[Weight, ...]:
    """Base-p digit weights of a dominant weight, all coordinates in [0, p)."""
    if not is_dominant(lam):
        raise ValueError(f"{lam} is not dominant")
    rs = lam.system
    ndigits = 1
    for c in lam.coords:
        d = 1
        while c >= p**d:
            d += 1
        ndigits = max(ndigits, d)
    return tuple(
        rs.weight(*(((c // p**j) % p) for c in lam.coords)) for j in range(ndigits)
    )


def steinberg_check(
    lam: Weight,
    p: int,
    box: TruncationBox,
    *,
    guard: SizeGuard | None = None,
) -> tuple[bool, FormalCharacter]:
    """Compare ch L(lam) with the product of twisted digit characters.

    Returns (equal on box, difference character on box).
    """
    lhs = simple_character(lam, p, box, guard=guard).char
    digits = steinberg_digits(lam, p)
    rs = lam.system
    zero = rs.zero_weight()
    prod = char_single(zero, TruncationBox.make((zero,), 0), complete=True)
    for i, digit in enumerate(digits):
        factor = full_simple_character(digit, p, guard=guard).char
        if i:
            factor = frobenius_twist_char(factor, i, p)
        new_box = TruncationBox.make(
            (prod.box.ceiling[0] + factor.box.ceiling[0],),
            prod.box.depth + factor.box.depth,
        )
        prod = char_multiply(prod, factor, new_box)
    ok = lhs.same_on(prod, box)
    diff = char_add(lhs.restrict(box), char_scale(prod.restrict(box), -1))
    return ok, diff
