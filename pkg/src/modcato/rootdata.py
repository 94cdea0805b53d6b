"""Root-system tables and exact weight arithmetic for the rank-1/2 types.

Weights are stored in fundamental-weight coordinates and root-lattice
vectors in simple-root coordinates; the Cartan matrix converts between
the two.  All arithmetic is exact (ints and Fractions, never floats).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

SUPPORTED_TYPES = ("A1", "A2", "B2")

# cartan[i][j] = <alpha_j, alpha_i^vee>, rows indexed by coroots.
_CARTAN = {
    "A1": ((2,),),
    "A2": ((2, -1), (-1, 2)),
    "B2": ((2, -1), (-2, 2)),  # alpha_1 long, alpha_2 short
}

# Half square lengths (alpha_i, alpha_i)/2 of the simple roots.
_HALF_NORM = {"A1": (1,), "A2": (1, 1), "B2": (2, 1)}

# Positive roots in simple-root coordinates, listed height-increasing
# with lexicographic tie-break.  This order is the global PBW order and
# must never change once caches exist.
_POSITIVE = {
    "A1": ((1,),),
    "A2": ((0, 1), (1, 0), (1, 1)),
    "B2": ((0, 1), (1, 0), (1, 1), (1, 2)),
}

_WEYL_SIZE = {"A1": 2, "A2": 6, "B2": 8}


@dataclass(frozen=True, eq=False, repr=False)
class Weight:
    """Integral weight in fundamental-weight coordinates."""

    system: "RootSystem" = field(repr=False)
    coords: tuple[int, ...]

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Weight)
            and self.system.cartan_type == other.system.cartan_type
            and self.coords == other.coords
        )

    def __hash__(self) -> int:
        return hash((self.system.cartan_type, self.coords))

    def __add__(self, other: "Weight") -> "Weight":
        _check_same(self.system, other.system)
        return Weight(self.system, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Weight") -> "Weight":
        _check_same(self.system, other.system)
        return Weight(self.system, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Weight":
        return Weight(self.system, tuple(-a for a in self.coords))

    def __mul__(self, n: int) -> "Weight":
        return Weight(self.system, tuple(n * a for a in self.coords))

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"Weight({self.system.cartan_type}, {self.coords})"


@dataclass(frozen=True, eq=False, repr=False)
class RootVector:
    """Element of the root lattice in simple-root coordinates."""

    system: "RootSystem" = field(repr=False)
    coeffs: tuple[int, ...]

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, RootVector)
            and self.system.cartan_type == other.system.cartan_type
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.system.cartan_type, self.coeffs))

    def __add__(self, other: "RootVector") -> "RootVector":
        _check_same(self.system, other.system)
        return RootVector(self.system, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "RootVector") -> "RootVector":
        _check_same(self.system, other.system)
        return RootVector(self.system, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, n: int) -> "RootVector":
        return RootVector(self.system, tuple(n * a for a in self.coeffs))

    __rmul__ = __mul__

    def height(self) -> int:
        return sum(self.coeffs)

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def __repr__(self) -> str:
        return f"RootVector({self.system.cartan_type}, {self.coeffs})"


@dataclass(frozen=True)
class WeylElement:
    """Lattice automorphism acting on fundamental coordinates, with sign."""

    matrix: tuple[tuple[int, ...], ...]
    sign: int

    def apply(self, w: Weight) -> Weight:
        coords = tuple(
            sum(row[k] * w.coords[k] for k in range(len(row))) for row in self.matrix
        )
        return Weight(w.system, coords)


class RootSystem:
    """Immutable root-system constants; use :func:`build_root_system`.

    Instances are shared and safe for concurrent use.
    """

    def __init__(self, cartan_type: str):
        if cartan_type not in SUPPORTED_TYPES:
            raise ValueError(
                f"unsupported Cartan type {cartan_type!r}; expected one of {SUPPORTED_TYPES}"
            )
        self.cartan_type = cartan_type
        self.cartan_matrix: tuple[tuple[int, ...], ...] = _CARTAN[cartan_type]
        self.rank = len(self.cartan_matrix)
        self.half_norms: tuple[int, ...] = _HALF_NORM[cartan_type]
        self._cartan_inv = _invert(self.cartan_matrix)
        self.positive_roots = tuple(RootVector(self, c) for c in _POSITIVE[cartan_type])
        self.simple_roots = tuple(
            RootVector(self, tuple(1 if j == i else 0 for j in range(self.rank)))
            for i in range(self.rank)
        )
        self.rho = Weight(self, (1,) * self.rank)
        # Fundamental coordinates of each positive root.
        self.root_fund: tuple[tuple[int, ...], ...] = tuple(
            tuple(
                sum(self.cartan_matrix[i][j] * c[j] for j in range(self.rank))
                for i in range(self.rank)
            )
            for c in _POSITIVE[cartan_type]
        )
        # Coroot pairing vectors: <w, root_k^vee> = sum_i coroot[k][i] * w.coords[i].
        self.coroots: tuple[tuple[int, ...], ...] = tuple(
            self._coroot_vector(c) for c in _POSITIVE[cartan_type]
        )
        self.weyl_group: tuple[WeylElement, ...] = self._generate_weyl_group()
        self._validate()

    # -- construction helpers -------------------------------------------

    def _coroot_vector(self, c: tuple[int, ...]) -> tuple[int, ...]:
        d = self.half_norms
        twice_norm = sum(
            c[i] * c[j] * d[i] * self.cartan_matrix[i][j]
            for i in range(self.rank)
            for j in range(self.rank)
        )
        if twice_norm % 2 != 0:
            raise AssertionError("root norm must be an even multiple of 1/2")
        d_root = twice_norm // 2
        vec = []
        for i in range(self.rank):
            num = c[i] * d[i]
            if num % d_root != 0:
                raise AssertionError("coroot coefficients must be integral")
            vec.append(num // d_root)
        return tuple(vec)

    def _generate_weyl_group(self) -> tuple[WeylElement, ...]:
        n = self.rank
        identity = tuple(tuple(1 if j == k else 0 for k in range(n)) for j in range(n))
        gens = []
        for i in range(n):
            m = [[1 if j == k else 0 for k in range(n)] for j in range(n)]
            for j in range(n):
                m[j][i] -= self.cartan_matrix[j][i]
            gens.append(tuple(tuple(row) for row in m))
        seen = {identity: 1}
        frontier = [identity]
        while frontier:
            nxt = []
            for mat in frontier:
                for g in gens:
                    prod = _mat_mul(g, mat)
                    if prod not in seen:
                        seen[prod] = -seen[mat]
                        nxt.append(prod)
            frontier = nxt
        elements = tuple(
            WeylElement(mat, sign)
            for mat, sign in sorted(seen.items(), key=lambda kv: kv[0])
        )
        return elements

    def _validate(self) -> None:
        a = self.cartan_matrix
        assert all(a[i][i] == 2 for i in range(self.rank))
        assert all(a[i][j] <= 0 for i in range(self.rank) for j in range(self.rank) if i != j)
        assert len(self.weyl_group) == _WEYL_SIZE[self.cartan_type]
        for i in range(self.rank):
            assert self.rho.coords[i] == 1
        for w in self.weyl_group:
            assert _det(w.matrix) == w.sign

    # -- basic constructors ---------------------------------------------

    def weight(self, *coords: int) -> Weight:
        if len(coords) == 1 and isinstance(coords[0], (tuple, list)):
            coords = tuple(coords[0])
        if len(coords) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates, got {len(coords)}")
        if not all(isinstance(c, int) for c in coords):
            raise ValueError("weight coordinates must be exact integers")
        return Weight(self, tuple(coords))

    def zero_weight(self) -> Weight:
        return Weight(self, (0,) * self.rank)

    def root_vector(self, *coeffs: int) -> RootVector:
        if len(coeffs) == 1 and isinstance(coeffs[0], (tuple, list)):
            coeffs = tuple(coeffs[0])
        if len(coeffs) != self.rank:
            raise ValueError(f"expected {self.rank} coefficients, got {len(coeffs)}")
        return RootVector(self, tuple(coeffs))

    # -- conversions ------------------------------------------------------

    def weight_of(self, rv: RootVector) -> Weight:
        """The weight with the same underlying lattice point as ``rv``."""
        coords = tuple(
            sum(self.cartan_matrix[i][j] * rv.coeffs[j] for j in range(self.rank))
            for i in range(self.rank)
        )
        return Weight(self, coords)

    def to_root_vector(self, w: Weight) -> RootVector | None:
        """Exact conversion; None when ``w`` is not in the root lattice."""
        coeffs = []
        for row in self._cartan_inv:
            v = sum(row[j] * w.coords[j] for j in range(self.rank))
            if v.denominator != 1:
                return None
            coeffs.append(int(v))
        return RootVector(self, tuple(coeffs))

    def root_pairing(self, w: Weight, k: int) -> int:
        """Pairing of ``w`` with the coroot of the k-th positive root."""
        return sum(self.coroots[k][i] * w.coords[i] for i in range(self.rank))

    # -- enumeration ------------------------------------------------------

    def root_vectors_up_to_height(self, h: int) -> Iterator[RootVector]:
        """All nonnegative root-lattice vectors of height at most ``h``."""
        if self.rank == 1:
            for a in range(h + 1):
                yield RootVector(self, (a,))
        else:
            for a in range(h + 1):
                for b in range(h + 1 - a):
                    yield RootVector(self, (a, b))


def _check_same(a: RootSystem, b: RootSystem) -> None:
    if a.cartan_type != b.cartan_type:
        raise ValueError(f"mismatched root systems {a.cartan_type} and {b.cartan_type}")


def _mat_mul(a, b):
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n)
    )


def _det(m) -> int:
    if len(m) == 1:
        return m[0][0]
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def _invert(m) -> tuple[tuple[Fraction, ...], ...]:
    d = _det(m)
    if len(m) == 1:
        return ((Fraction(1, d),),)
    return (
        (Fraction(m[1][1], d), Fraction(-m[0][1], d)),
        (Fraction(-m[1][0], d), Fraction(m[0][0], d)),
    )


@lru_cache(maxsize=None)
def build_root_system(cartan_type: str) -> RootSystem:
    """Build (once) the shared root system for a supported Cartan type."""
    return RootSystem(cartan_type)


def pairing(lam: Weight, i: int) -> int:
    """<lam, alpha_i^vee>, which is the i-th fundamental coordinate."""
    if not 0 <= i < lam.system.rank:
        raise IndexError(f"simple-root index {i} out of range for rank {lam.system.rank}")
    return lam.coords[i]


def leq(mu: Weight, lam: Weight) -> bool:
    """Dominance order: lam - mu is a nonnegative root-lattice vector."""
    _check_same(mu.system, lam.system)
    rv = lam.system.to_root_vector(lam - mu)
    return rv is not None and rv.is_nonnegative()


def is_dominant(lam: Weight) -> bool:
    return all(c >= 0 for c in lam.coords)


def kostant_partition(nu: RootVector) -> int:
    """Number of multisets of positive roots summing to ``nu``."""
    if not nu.is_nonnegative():
        return 0
    return _kp(nu.system.cartan_type, nu.coeffs, 0)


@lru_cache(maxsize=None)
def _kp(cartan_type: str, coeffs: tuple[int, ...], idx: int) -> int:
    if all(c == 0 for c in coeffs):
        return 1
    roots = _POSITIVE[cartan_type]
    if idx == len(roots):
        return 0
    root = roots[idx]
    total = 0
    k = 0
    rem = coeffs
    while all(c >= 0 for c in rem):
        total += _kp(cartan_type, rem, idx + 1)
        k += 1
        rem = tuple(c - k * r for c, r in zip(coeffs, root))
    return total


def weight_height(lam: Weight) -> Fraction:
    """Height of ``lam`` in the rational span of the simple roots."""
    inv = lam.system._cartan_inv
    return sum(
        (sum(row[j] * lam.coords[j] for j in range(lam.system.rank)) for row in inv),
        Fraction(0),
    )


def dot_action(w: WeylElement, lam: Weight) -> Weight:
    """The rho-shifted Weyl action w.lam = w(lam + rho) - rho."""
    rho = lam.system.rho
    return w.apply(lam + rho) - rho


def height_drop(lam: Weight) -> int:
    """Height of lam minus its lowest Weyl image; bounds orbit-hull depth."""
    rs = lam.system
    best = 0
    for w in rs.weyl_group:
        rv = rs.to_root_vector(lam - w.apply(lam))
        if rv is None:
            raise AssertionError("Weyl images differ by root-lattice vectors")
        best = max(best, rv.height())
    return best
