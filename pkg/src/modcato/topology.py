"""The order topology on the weight lattice.

Open sets are downward closed; only down-closures of finite ceilings are
representable here, which makes every open set quasi-bounded by
construction.  Locally closed sets are finite and order-convex.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import PredicateError
from .rootdata import RootVector, Weight, leq


@dataclass(frozen=True)
class OpenSet:
    """Down-closure of a finite ceiling; membership is mu <= some ceiling."""

    ceiling: tuple[Weight, ...]

    @staticmethod
    def down_closure(weights) -> "OpenSet":
        weights = list(weights)
        if not weights:
            raise ValueError("open sets need a nonempty ceiling")
        maximal = [
            w for w in weights if not any(leq(w, v) and w != v for v in weights)
        ]
        unique = sorted(set(maximal), key=lambda w: w.coords)
        return OpenSet(tuple(unique))

    @property
    def system(self):
        return self.ceiling[0].system

    def contains(self, w: Weight) -> bool:
        return any(leq(w, c) for c in self.ceiling)

    def up_set(self, lam: Weight) -> tuple[Weight, ...]:
        """The finite set of members above lam (quasi-boundedness)."""
        rs = self.system
        found = {}
        for c in self.ceiling:
            gap = rs.to_root_vector(c - lam)
            if gap is None or not gap.is_nonnegative():
                continue
            for rv in _vectors_below(gap):
                w = lam + rs.weight_of(rv)
                found[w.coords] = w
        return tuple(found[c] for c in sorted(found))

    def translate(self, gamma: Weight) -> "OpenSet":
        return OpenSet(tuple(c + gamma for c in self.ceiling))

    def serialize(self) -> list[list[int]]:
        return sorted(list(c.coords) for c in self.ceiling)


@dataclass(frozen=True)
class CarvedOpen:
    """The open complement of K inside its down-closure J, as a predicate."""

    inside: OpenSet
    removed: "LocallyClosedSet"

    def contains(self, w: Weight) -> bool:
        return self.inside.contains(w) and w not in self.removed.elements

    def translate(self, gamma: Weight) -> "CarvedOpen":
        return CarvedOpen(self.inside.translate(gamma), shift_set(self.removed, gamma))


@dataclass(frozen=True)
class LocallyClosedSet:
    """Finite order-convex weight set."""

    elements: frozenset[Weight]

    @staticmethod
    def make(weights) -> "LocallyClosedSet":
        weights = frozenset(weights)
        if not weights:
            raise ValueError("locally closed sets here are nonempty")
        if not is_locally_closed(weights):
            raise ValueError("set is not locally closed (an interval leaks)")
        return LocallyClosedSet(weights)

    @cached_property
    def sorted(self) -> tuple[Weight, ...]:
        return tuple(sorted(self.elements, key=lambda w: w.coords))

    def __iter__(self):
        return iter(self.sorted)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, w: Weight) -> bool:
        return w in self.elements

    def serialize(self) -> list[list[int]]:
        return [list(w.coords) for w in self.sorted]


def _vectors_below(gap: RootVector):
    """All root vectors 0 <= rv <= gap, componentwise."""
    rs = gap.system
    if rs.rank == 1:
        for a in range(gap.coeffs[0] + 1):
            yield RootVector(rs, (a,))
    else:
        for a in range(gap.coeffs[0] + 1):
            for b in range(gap.coeffs[1] + 1):
                yield RootVector(rs, (a, b))


def interval(lam: Weight, nu: Weight) -> tuple[Weight, ...]:
    """The finite order interval [lam, nu]; empty unless lam <= nu."""
    rs = lam.system
    gap = rs.to_root_vector(nu - lam)
    if gap is None or not gap.is_nonnegative():
        return ()
    out = tuple(lam + rs.weight_of(rv) for rv in _vectors_below(gap))
    return tuple(sorted(out, key=lambda w: w.coords))


def is_locally_closed(weights) -> bool:
    """Exhaustively check order convexity over all pairs."""
    weights = set(weights)
    for lam in weights:
        for nu in weights:
            if lam == nu or not leq(lam, nu):
                continue
            for mu in interval(lam, nu):
                if mu not in weights:
                    return False
    return True


def carve_J_Jprime(K: LocallyClosedSet) -> tuple[OpenSet, CarvedOpen]:
    """J = down-closure of K; J' = J minus K, open because K is convex."""
    J = OpenSet.down_closure(K.sorted)
    Jprime = CarvedOpen(J, K)
    _assert_open_on_sample(Jprime, K)
    return J, Jprime


def _assert_open_on_sample(Jprime: CarvedOpen, K: LocallyClosedSet) -> None:
    # Openness can only fail just below K, so a one-interval-deep sample
    # around K is a complete witness set for the finite data we ever touch.
    rs = K.sorted[0].system
    sample = set(K.sorted)
    for a in K.sorted:
        for b in K.sorted:
            sample.update(interval(b, a))
        for root in rs.positive_roots:
            sample.add(a - rs.weight_of(root))
    for hi in sample:
        if not Jprime.contains(hi):
            continue
        for lo in sample:
            if leq(lo, hi) and Jprime.inside.contains(lo) and not Jprime.contains(lo):
                raise AssertionError("carved complement failed openness sample")


def periodicity_condition(K: LocallyClosedSet, p: int, l: int) -> bool:
    """No two elements of K differ by p^l times a positive root-lattice vector."""
    rs = K.sorted[0].system
    factor = p**l
    for k1 in K.sorted:
        for k2 in K.sorted:
            rv = rs.to_root_vector(k1 - k2)
            if rv is None or not rv.is_nonnegative() or rv.height() == 0:
                continue
            if all(c % factor == 0 for c in rv.coeffs):
                return False
    return True


def min_l(K: LocallyClosedSet, p: int) -> int:
    """Smallest l >= 1 making the periodicity condition hold; always exists."""
    l = 1
    while not periodicity_condition(K, p, l):
        l += 1
    return l


def shift_set(K: LocallyClosedSet, gamma: Weight) -> LocallyClosedSet:
    # Translation is an order isomorphism, so convexity is preserved.
    return LocallyClosedSet(frozenset(w + gamma for w in K.elements))


def validate_open_predicate(pred, support) -> None:
    """Check a membership predicate is downward closed on a finite sample."""
    support = list(support)
    for hi in support:
        for lo in support:
            if leq(lo, hi) and pred(hi) and not pred(lo):
                raise PredicateError(
                    f"predicate is not open: contains {hi} but not {lo} below it"
                )


def validate_closed_predicate(pred, support) -> None:
    """Check a membership predicate is upward closed on a finite sample."""
    support = list(support)
    for lo in support:
        for hi in support:
            if leq(lo, hi) and pred(lo) and not pred(hi):
                raise PredicateError(
                    f"predicate is not closed: contains {lo} but not {hi} above it"
                )
