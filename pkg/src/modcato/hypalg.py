"""Exact straightening in the integral enveloping algebra, and divided-power
contravariant Gram matrices on Verma weight spaces.

Straightening works with ordinary powers over the integers throughout;
divided-power values are recovered at the very end by exact factorial
division, whose exactness is asserted entrywise (it holds precisely because
the divided powers span an integral form).  Reduction mod p happens only at
rank computation.

Structure constants come from fixed matrix realizations of the three
supported types; a bracket-closure, Jacobi, and root-string self-test runs
once per realization, so a transcription error cannot survive construction.
The straightening memo tables are plain dicts: reads and idempotent inserts
under the interpreter lock are safe for concurrent use.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, NamedTuple

from . import cache as cache_store
from .errors import ExactnessError, SizeGuardError
from .rootdata import RootSystem, RootVector, Weight, build_root_system, kostant_partition


@dataclass(frozen=True)
class SizeGuard:
    """Hard limits that make oversized instances fail loudly."""

    max_gram_dim: int = 200
    max_terms: int = 10**6


DEFAULT_GUARD = SizeGuard()

# Running counters for exactness bookkeeping (read by the acceptance suite).
STATS = {"exact_divisions": 0, "gram_matrices": 0}


class PBWMonomial(NamedTuple):
    """Ordinary-power PBW monomial f^F h^H e^E in the global root order."""

    f_exps: tuple[int, ...]
    h_exps: tuple[int, ...]
    e_exps: tuple[int, ...]


@dataclass(eq=False)
class UElement:
    """Integer combination of PBW monomials."""

    system: RootSystem
    terms: dict[PBWMonomial, int]

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, UElement)
            and self.system.cartan_type == other.system.cartan_type
            and self.terms == other.terms
        )

    def support(self) -> list[PBWMonomial]:
        return sorted(self.terms)

    def weight(self) -> RootVector:
        """Common weight of all terms; raises when inhomogeneous."""
        rs = self.system
        weights = set()
        for mono in self.terms:
            v = [0] * rs.rank
            for k, root in enumerate(rs.positive_roots):
                for i in range(rs.rank):
                    v[i] += (mono.e_exps[k] - mono.f_exps[k]) * root.coeffs[i]
            weights.add(tuple(v))
        if len(weights) > 1:
            raise ValueError("element is not weight homogeneous")
        coeffs = weights.pop() if weights else (0,) * rs.rank
        return RootVector(rs, coeffs)


@dataclass(frozen=True)
class GramMatrix:
    """Divided-power contravariant form on one Verma weight space."""

    lam: Weight
    nu: RootVector
    basis: tuple[PBWMonomial, ...]
    entries: tuple[tuple[int, ...], ...]


# ---------------------------------------------------------------------------
# Matrix realizations.

def _elem(n: int, i: int, j: int) -> tuple[tuple[int, ...], ...]:
    return tuple(
        tuple(1 if (a, b) == (i, j) else 0 for b in range(n)) for a in range(n)
    )


def _mat_add(*ms):
    n = len(ms[0])
    return tuple(
        tuple(sum(m[i][j] for m in ms) for j in range(n)) for i in range(n)
    )


def _mat_neg(m):
    return tuple(tuple(-v for v in row) for row in m)


def _mat_mul(a, b):
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


def _mat_bracket(a, b):
    ab = _mat_mul(a, b)
    ba = _mat_mul(b, a)
    n = len(a)
    return tuple(tuple(ab[i][j] - ba[i][j] for j in range(n)) for i in range(n))


def _realization(cartan_type: str):
    """Chevalley-basis matrices: e per positive root (global order), h per
    simple root.  f matrices are the transposes."""
    if cartan_type == "A1":
        e = [_elem(2, 0, 1)]
        h = [_mat_add(_elem(2, 0, 0), _mat_neg(_elem(2, 1, 1)))]
    elif cartan_type == "A2":
        # Positive root order (0,1), (1,0), (1,1) over (alpha_1, alpha_2).
        e = [_elem(3, 1, 2), _elem(3, 0, 1), _elem(3, 0, 2)]
        h = [
            _mat_add(_elem(3, 0, 0), _mat_neg(_elem(3, 1, 1))),
            _mat_add(_elem(3, 1, 1), _mat_neg(_elem(3, 2, 2))),
        ]
    elif cartan_type == "B2":
        # Rank-2 symplectic realization on basis (v1, v2, v_-2, v_-1);
        # alpha_1 is the long simple root, alpha_2 the short one.
        n = 4
        e = [
            _mat_add(_elem(n, 0, 1), _mat_neg(_elem(n, 2, 3))),  # (0,1) short
            _elem(n, 1, 2),                                      # (1,0) long
            _mat_add(_elem(n, 0, 2), _elem(n, 1, 3)),            # (1,1) short
            _elem(n, 0, 3),                                      # (1,2) long
        ]
        h = [
            _mat_add(_elem(n, 1, 1), _mat_neg(_elem(n, 2, 2))),
            _mat_add(
                _elem(n, 0, 0),
                _mat_neg(_elem(n, 1, 1)),
                _elem(n, 2, 2),
                _mat_neg(_elem(n, 3, 3)),
            ),
        ]
    else:  # pragma: no cover - guarded by build_root_system
        raise ValueError(cartan_type)
    f = [tuple(tuple(row[i] for row in m) for i in range(len(m))) for m in e]
    return f, h, e


def _solve_in_basis(basis_vecs, target):
    """Exact coordinates of target in the span of basis_vecs, or None."""
    cols = len(basis_vecs)
    rows = len(target)
    aug = [
        [Fraction(basis_vecs[c][r]) for c in range(cols)] + [Fraction(target[r])]
        for r in range(rows)
    ]
    pivots = []
    rank = 0
    for c in range(cols):
        piv = next((r for r in range(rank, rows) if aug[r][c] != 0), None)
        if piv is None:
            continue
        aug[rank], aug[piv] = aug[piv], aug[rank]
        inv = 1 / aug[rank][c]
        aug[rank] = [v * inv for v in aug[rank]]
        for r in range(rows):
            if r != rank and aug[r][c] != 0:
                factor = aug[r][c]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[rank])]
        pivots.append(c)
        rank += 1
    for r in range(rank, rows):
        if aug[r][cols] != 0:
            return None
    coords = [Fraction(0)] * cols
    for r, c in enumerate(pivots):
        coords[c] = aug[r][cols]
    return coords


class ChevalleyStructure:
    """Bracket table of a fixed Chevalley basis, with optional sign flips.

    ``flip`` lists indices of (non-simple) positive roots whose e/f basis
    vectors are negated; that is exactly a change of the structure-constant
    sign convention and must not change any Gram rank.
    """

    def __init__(self, rs: RootSystem, flip: tuple[int, ...] = ()):
        self.rs = rs
        self.flip = tuple(sorted(flip))
        self.nroots = len(rs.positive_roots)
        self.rank = rs.rank
        f_mats, h_mats, e_mats = _realization(rs.cartan_type)
        f_mats, e_mats = list(f_mats), list(e_mats)
        for k in self.flip:
            f_mats[k] = _mat_neg(f_mats[k])
            e_mats[k] = _mat_neg(e_mats[k])
        self._basis_mats = list(f_mats) + list(h_mats) + list(e_mats)
        self._basis_vecs = [
            [v for row in m for v in row] for m in self._basis_mats
        ]
        self.dim = len(self._basis_mats)
        self.bracket_table: dict[tuple[int, int], tuple[tuple[int, int], ...]] = {}
        for i in range(self.dim):
            for j in range(self.dim):
                self.bracket_table[(i, j)] = self._expand_bracket(i, j)
        # <root_k, alpha_i^vee> for the h-commutation rules.
        self.root_fund = rs.root_fund
        self._self_test()

    # index bookkeeping -------------------------------------------------
    def f_index(self, k: int) -> int:
        return k

    def h_index(self, i: int) -> int:
        return self.nroots + i

    def e_index(self, k: int) -> int:
        return self.nroots + self.rank + k

    def classify(self, idx: int) -> tuple[str, int]:
        if idx < self.nroots:
            return "f", idx
        if idx < self.nroots + self.rank:
            return "h", idx - self.nroots
        return "e", idx - self.nroots - self.rank

    # construction -------------------------------------------------------
    def _expand_bracket(self, i: int, j: int) -> tuple[tuple[int, int], ...]:
        br = _mat_bracket(self._basis_mats[i], self._basis_mats[j])
        vec = [v for row in br for v in row]
        if not any(vec):
            return ()
        coords = _solve_in_basis(self._basis_vecs, vec)
        if coords is None:
            raise ExactnessError("bracket does not close on the Chevalley basis")
        out = []
        for idx, c in enumerate(coords):
            if c == 0:
                continue
            if c.denominator != 1:
                raise ExactnessError("non-integral structure constant")
            out.append((idx, int(c)))
        return tuple(out)

    def _bracket_combo(self, x: dict[int, int], y: dict[int, int]) -> dict[int, int]:
        out: dict[int, int] = {}
        for i, ci in x.items():
            for j, cj in y.items():
                for idx, c in self.bracket_table[(i, j)]:
                    out[idx] = out.get(idx, 0) + ci * cj * c
        return {k: v for k, v in out.items() if v}

    def _self_test(self) -> None:
        rs = self.rs
        dim = self.dim
        # Jacobi identity over the whole basis.
        for i in range(dim):
            for j in range(dim):
                for k in range(dim):
                    lhs = self._bracket_combo({i: 1}, dict(self.bracket_table[(j, k)]))
                    rhs = self._bracket_combo(dict(self.bracket_table[(i, j)]), {k: 1})
                    for idx, c in self._bracket_combo({j: 1}, dict(self.bracket_table[(i, k)])).items():
                        rhs[idx] = rhs.get(idx, 0) + c
                    rhs = {a: b for a, b in rhs.items() if b}
                    if lhs != rhs:
                        raise ExactnessError("Jacobi identity failed in structure table")
        # Weight rules and coroot consistency.
        for k in range(self.nroots):
            for i in range(self.rank):
                expect = self.root_fund[k][i]
                assert self.bracket_table[(self.h_index(i), self.e_index(k))] == (
                    ((self.e_index(k), expect),) if expect else ()
                )
                assert self.bracket_table[(self.h_index(i), self.f_index(k))] == (
                    ((self.f_index(k), -expect),) if expect else ()
                )
            ef = dict(self.bracket_table[(self.e_index(k), self.f_index(k))])
            expected = {
                self.h_index(i): rs.coroots[k][i]
                for i in range(self.rank)
                if rs.coroots[k][i]
            }
            if ef != expected:
                raise ExactnessError("coroot mismatch between table and root data")
        # Chevalley sign condition |N_{a,b}| = (string length p) + 1.
        root_set = {r.coeffs for r in rs.positive_roots}
        root_set |= {tuple(-c for c in r) for r in root_set}
        index_of = {r.coeffs: k for k, r in enumerate(rs.positive_roots)}
        for i, a in enumerate(rs.positive_roots):
            for j, b in enumerate(rs.positive_roots):
                if i == j:
                    continue
                s = tuple(x + y for x, y in zip(a.coeffs, b.coeffs))
                table = self.bracket_table[(self.e_index(i), self.e_index(j))]
                if s not in root_set:
                    assert table == ()
                    continue
                p = 0
                while tuple(x - (p + 1) * y for x, y in zip(b.coeffs, a.coeffs)) in root_set:
                    p += 1
                assert len(table) == 1
                idx, n = table[0]
                assert idx == self.e_index(index_of[s])
                assert abs(n) == p + 1


@lru_cache(maxsize=None)
def get_structure(cartan_type: str, flip: tuple[int, ...] = ()) -> ChevalleyStructure:
    return ChevalleyStructure(build_root_system(cartan_type), flip)


class PBWEngine:
    """Memoized normal-ordering engine over one Chevalley structure."""

    def __init__(self, structure: ChevalleyStructure):
        self.st = structure
        self.rs = structure.rs
        m, r = structure.nroots, structure.rank
        self._zero_f = (0,) * m
        self._zero_h = (0,) * r
        self._zero_e = (0,) * m
        self._memo_insert_e: dict = {}
        self._memo_insert_f: dict = {}
        self._memo_cross: dict = {}
        self._memo_cross0: dict = {}
        self._gram_polys: dict = {}

    # -- small helpers ----------------------------------------------------
    @staticmethod
    def _bump(exps: tuple[int, ...], k: int, by: int = 1) -> tuple[int, ...]:
        return exps[:k] + (exps[k] + by,) + exps[k + 1 :]

    def _e_weight_pairing(self, e_exps: tuple[int, ...], i: int) -> int:
        rf = self.st.root_fund
        return sum(e_exps[k] * rf[k][i] for k in range(self.st.nroots) if e_exps[k])

    def _f_weight_pairings(self, f_exps: tuple[int, ...]) -> tuple[int, ...]:
        rf = self.st.root_fund
        return tuple(
            sum(f_exps[k] * rf[k][i] for k in range(self.st.nroots) if f_exps[k])
            for i in range(self.st.rank)
        )

    # -- nilpotent-part insertion ------------------------------------------
    def insert_e(self, e_exps: tuple[int, ...], k: int) -> dict[tuple[int, ...], int]:
        """Normal form of (e-monomial) * e_k inside the positive part."""
        key = (e_exps, k)
        hit = self._memo_insert_e.get(key)
        if hit is not None:
            return hit
        top = max((i for i in range(len(e_exps)) if e_exps[i]), default=-1)
        if top <= k:
            result = {self._bump(e_exps, k): 1}
        else:
            rest = self._bump(e_exps, top, -1)
            out: dict[tuple[int, ...], int] = {}
            for mono, c in self.insert_e(rest, k).items():
                for mono2, c2 in self.insert_e(mono, top).items():
                    out[mono2] = out.get(mono2, 0) + c * c2
            for idx, cb in self.st.bracket_table[(self.st.e_index(top), self.st.e_index(k))]:
                kind, pos = self.st.classify(idx)
                assert kind == "e"
                for mono2, c2 in self.insert_e(rest, pos).items():
                    out[mono2] = out.get(mono2, 0) + cb * c2
            result = {m: c for m, c in out.items() if c}
        self._memo_insert_e[key] = result
        return result

    def insert_f(self, f_exps: tuple[int, ...], k: int) -> dict[tuple[int, ...], int]:
        """Normal form of (f-monomial) * f_k inside the negative part."""
        key = (f_exps, k)
        hit = self._memo_insert_f.get(key)
        if hit is not None:
            return hit
        top = max((i for i in range(len(f_exps)) if f_exps[i]), default=-1)
        if top <= k:
            result = {self._bump(f_exps, k): 1}
        else:
            rest = self._bump(f_exps, top, -1)
            out: dict[tuple[int, ...], int] = {}
            for mono, c in self.insert_f(rest, k).items():
                for mono2, c2 in self.insert_f(mono, top).items():
                    out[mono2] = out.get(mono2, 0) + c * c2
            for idx, cb in self.st.bracket_table[(self.st.f_index(top), self.st.f_index(k))]:
                kind, pos = self.st.classify(idx)
                assert kind == "f"
                for mono2, c2 in self.insert_f(rest, pos).items():
                    out[mono2] = out.get(mono2, 0) + cb * c2
            result = {m: c for m, c in out.items() if c}
        self._memo_insert_f[key] = result
        return result

    # -- moving one f past an e-monomial -----------------------------------
    def cross(self, e_exps: tuple[int, ...], k: int):
        """Normal form of (e-monomial) * f_k as f/h/e triples."""
        key = (e_exps, k)
        hit = self._memo_cross.get(key)
        if hit is not None:
            return hit
        if not any(e_exps):
            result = {(self._bump(self._zero_f, k), self._zero_h, self._zero_e): 1}
            self._memo_cross[key] = result
            return result
        top = max(i for i in range(len(e_exps)) if e_exps[i])
        rest = self._bump(e_exps, top, -1)
        out: dict[tuple, int] = {}
        for (f1, h1, e1), c in self.cross(rest, k).items():
            for e2, c2 in self.insert_e(e1, top).items():
                key2 = (f1, h1, e2)
                out[key2] = out.get(key2, 0) + c * c2
        for idx, cb in self.st.bracket_table[(self.st.e_index(top), self.st.f_index(k))]:
            kind, pos = self.st.classify(idx)
            if kind == "h":
                key2 = (self._zero_f, self._bump(self._zero_h, pos), rest)
                out[key2] = out.get(key2, 0) + cb
                pairing = self._e_weight_pairing(rest, pos)
                if pairing:
                    key2 = (self._zero_f, self._zero_h, rest)
                    out[key2] = out.get(key2, 0) - cb * pairing
            elif kind == "e":
                for e2, c2 in self.insert_e(rest, pos).items():
                    key2 = (self._zero_f, self._zero_h, e2)
                    out[key2] = out.get(key2, 0) + cb * c2
            else:
                for mono, c2 in self.cross(rest, pos).items():
                    out[mono] = out.get(mono, 0) + cb * c2
        result = {m: c for m, c in out.items() if c}
        self._memo_cross[key] = result
        return result

    def cross_f_free(self, e_exps: tuple[int, ...], k: int):
        """The f-free part of cross(); everything that can still reach U^0."""
        key = (e_exps, k)
        hit = self._memo_cross0.get(key)
        if hit is not None:
            return hit
        if not any(e_exps):
            self._memo_cross0[key] = {}
            return {}
        top = max(i for i in range(len(e_exps)) if e_exps[i])
        rest = self._bump(e_exps, top, -1)
        out: dict[tuple, int] = {}
        for (h1, e1), c in self.cross_f_free(rest, k).items():
            for e2, c2 in self.insert_e(e1, top).items():
                key2 = (h1, e2)
                out[key2] = out.get(key2, 0) + c * c2
        for idx, cb in self.st.bracket_table[(self.st.e_index(top), self.st.f_index(k))]:
            kind, pos = self.st.classify(idx)
            if kind == "h":
                key2 = (self._bump(self._zero_h, pos), rest)
                out[key2] = out.get(key2, 0) + cb
                pairing = self._e_weight_pairing(rest, pos)
                if pairing:
                    key2 = (self._zero_h, rest)
                    out[key2] = out.get(key2, 0) - cb * pairing
            elif kind == "e":
                for e2, c2 in self.insert_e(rest, pos).items():
                    key2 = (self._zero_h, e2)
                    out[key2] = out.get(key2, 0) + cb * c2
            else:
                for mono, c2 in self.cross_f_free(rest, pos).items():
                    out[mono] = out.get(mono, 0) + cb * c2
        result = {m: c for m, c in out.items() if c}
        self._memo_cross0[key] = result
        return result

    # -- full monomial times generator --------------------------------------
    def _expand_shift(self, h_exps: tuple[int, ...], shifts: tuple[int, ...]):
        """Expansion of prod_i (h_i - shifts[i])^{h_exps[i]} in h-monomials."""
        out = {self._zero_h: 1}
        for i, b in enumerate(h_exps):
            if b == 0:
                continue
            s = shifts[i]
            if s == 0:
                out = {self._bump(m, i, b): c for m, c in out.items()}
                continue
            nxt: dict[tuple[int, ...], int] = {}
            for m, c in out.items():
                for kk in range(b + 1):
                    coeff = c * math.comb(b, kk) * (-s) ** (b - kk)
                    key = self._bump(m, i, kk)
                    nxt[key] = nxt.get(key, 0) + coeff
            out = nxt
        return out

    def _mul_f_mono(self, f_exps: tuple[int, ...], extra: tuple[int, ...]):
        state = {f_exps: 1}
        for k in range(len(extra)):
            for _ in range(extra[k]):
                nxt: dict[tuple[int, ...], int] = {}
                for m, c in state.items():
                    for m2, c2 in self.insert_f(m, k).items():
                        nxt[m2] = nxt.get(m2, 0) + c * c2
                state = nxt
        return state

    def mono_mul_gen(self, mono: tuple, kind: str, pos: int):
        f_exps, h_exps, e_exps = mono
        out: dict[tuple, int] = {}
        if kind == "e":
            for e2, c in self.insert_e(e_exps, pos).items():
                out[(f_exps, h_exps, e2)] = c
        elif kind == "h":
            out[(f_exps, self._bump(h_exps, pos), e_exps)] = 1
            pairing = self._e_weight_pairing(e_exps, pos)
            if pairing:
                out[(f_exps, h_exps, e_exps)] = -pairing
        elif kind == "f":
            for (f_t, h_t, e_t), ct in self.cross(e_exps, pos).items():
                shifts = self._f_weight_pairings(f_t)
                shifted = self._expand_shift(h_exps, shifts)
                merged_f = self._mul_f_mono(f_exps, f_t)
                for fr, cf in merged_f.items():
                    for hm, ch in shifted.items():
                        hr = tuple(a + b for a, b in zip(hm, h_t))
                        key = (fr, hr, e_t)
                        val = out.get(key, 0) + ct * cf * ch
                        if val:
                            out[key] = val
                        else:
                            out.pop(key, None)
        else:
            raise ValueError(f"unknown generator kind {kind!r}")
        return {m: c for m, c in out.items() if c}

    def apply_gen(self, state: dict, kind: str, pos: int, guard: SizeGuard):
        nxt: dict[tuple, int] = {}
        for mono, c in state.items():
            for mono2, c2 in self.mono_mul_gen(mono, kind, pos).items():
                val = nxt.get(mono2, 0) + c * c2
                if val:
                    nxt[mono2] = val
                else:
                    nxt.pop(mono2, None)
        if len(nxt) > guard.max_terms:
            raise SizeGuardError(
                f"straightening exceeded {guard.max_terms} terms"
            )
        return nxt

    # -- Gram pipeline -------------------------------------------------------
    def sigma_e_state(self, f_exps: tuple[int, ...]):
        """Normal form of the transpose of the f-monomial (an e-element)."""
        state = {self._zero_e: 1}
        for k in range(len(f_exps) - 1, -1, -1):
            for _ in range(f_exps[k]):
                nxt: dict[tuple[int, ...], int] = {}
                for mono, c in state.items():
                    for mono2, c2 in self.insert_e(mono, k).items():
                        nxt[mono2] = nxt.get(mono2, 0) + c * c2
                state = nxt
        return state

    def hc_pair_poly(self, i_exps, j_exps, guard: SizeGuard):
        """U^0 component of transpose(f_I) * f_J, as an h-polynomial.

        Terms that acquire an f factor can never return to U^0 (right
        multiplication only adds f letters), so they are dropped eagerly.
        """
        state = {
            (self._zero_h, e): c for e, c in self.sigma_e_state(i_exps).items()
        }
        for k in range(len(j_exps)):
            for _ in range(j_exps[k]):
                nxt: dict[tuple, int] = {}
                for (h1, e1), c in state.items():
                    for (h2, e2), c2 in self.cross_f_free(e1, k).items():
                        key = (tuple(a + b for a, b in zip(h1, h2)), e2)
                        val = nxt.get(key, 0) + c * c2
                        if val:
                            nxt[key] = val
                        else:
                            nxt.pop(key, None)
                if len(nxt) > guard.max_terms:
                    raise SizeGuardError(
                        f"Gram pipeline exceeded {guard.max_terms} terms"
                    )
                state = nxt
        poly: dict[tuple[int, ...], int] = {}
        for (h1, e1), c in state.items():
            if not any(e1):
                poly[h1] = poly.get(h1, 0) + c
        return {m: c for m, c in poly.items() if c}

    def gram_poly_matrix(self, nu_coeffs: tuple[int, ...], guard: SizeGuard):
        hit = self._gram_polys.get(nu_coeffs)
        if hit is not None:
            return hit
        exps_list = _f_exponents(self.rs, nu_coeffs)
        polys = tuple(
            tuple(self.hc_pair_poly(i_exps, j_exps, guard) for j_exps in exps_list)
            for i_exps in exps_list
        )
        self._gram_polys[nu_coeffs] = (exps_list, polys)
        return exps_list, polys


@lru_cache(maxsize=None)
def get_engine(cartan_type: str, flip: tuple[int, ...] = ()) -> PBWEngine:
    return PBWEngine(get_structure(cartan_type, flip))


# ---------------------------------------------------------------------------
# Public operations.

def _f_exponents(rs: RootSystem, nu_coeffs: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    roots = [r.coeffs for r in rs.positive_roots]
    out: list[tuple[int, ...]] = []

    def rec(idx: int, remaining: tuple[int, ...], acc: list[int]):
        if idx == len(roots):
            if all(c == 0 for c in remaining):
                out.append(tuple(acc))
            return
        root = roots[idx]
        k = 0
        rem = remaining
        while all(c >= 0 for c in rem):
            rec(idx + 1, rem, acc + [k])
            k += 1
            rem = tuple(c - k * r for c, r in zip(remaining, root))
    rec(0, nu_coeffs, [])
    return tuple(sorted(out))


def enumerate_f_monomials(rs: RootSystem, nu: RootVector) -> list[PBWMonomial]:
    """All f-only PBW monomials of weight -nu, in lexicographic order."""
    if not nu.is_nonnegative():
        raise ValueError("nu must be a nonnegative root-lattice vector")
    m = len(rs.positive_roots)
    zero_h = (0,) * rs.rank
    zero_e = (0,) * m
    return [
        PBWMonomial(exps, zero_h, zero_e) for exps in _f_exponents(rs, nu.coeffs)
    ]


def straighten(
    rs: RootSystem,
    word: Iterable[tuple[str, int, int]],
    *,
    guard: SizeGuard | None = None,
    engine: PBWEngine | None = None,
) -> UElement:
    """Expand a product of generator powers in the ordinary-power PBW basis.

    ``word`` is a sequence of (kind, index, power) with kind in "e", "f",
    "h"; indices refer to positive roots (e, f) or simple roots (h).
    """
    guard = guard or DEFAULT_GUARD
    eng = engine or get_engine(rs.cartan_type)
    m = len(rs.positive_roots)
    identity = ((0,) * m, (0,) * rs.rank, (0,) * m)
    state: dict[tuple, int] = {identity: 1}
    for kind, pos, power in word:
        limit = m if kind in ("e", "f") else rs.rank
        if not 0 <= pos < limit:
            raise ValueError(f"generator index {pos} out of range for kind {kind!r}")
        if power < 0:
            raise ValueError("generator powers must be nonnegative")
        for _ in range(power):
            state = eng.apply_gen(state, kind, pos, guard)
    return UElement(rs, {PBWMonomial(*mono): c for mono, c in state.items()})


def multiply(u: UElement, v: UElement, *, guard: SizeGuard | None = None) -> UElement:
    """Product of two normal-form elements, re-normalized."""
    guard = guard or DEFAULT_GUARD
    eng = get_engine(u.system.cartan_type)
    out: dict[tuple, int] = {}
    for mono2, c2 in v.terms.items():
        word: list[tuple[str, int, int]] = []
        for k, a in enumerate(mono2.f_exps):
            if a:
                word.append(("f", k, a))
        for i, a in enumerate(mono2.h_exps):
            if a:
                word.append(("h", i, a))
        for k, a in enumerate(mono2.e_exps):
            if a:
                word.append(("e", k, a))
        state = {tuple(m): c for m, c in u.terms.items()}
        for kind, pos, power in word:
            for _ in range(power):
                state = eng.apply_gen(state, kind, pos, guard)
        for mono, c in state.items():
            key = PBWMonomial(*mono)
            val = out.get(key, 0) + c * c2
            if val:
                out[key] = val
            else:
                out.pop(key, None)
    return UElement(u.system, out)


def hc_project(u: UElement) -> UElement:
    """Projection onto the U^0 factor of the triangular decomposition."""
    kept = {
        mono: c
        for mono, c in u.terms.items()
        if not any(mono.f_exps) and not any(mono.e_exps)
    }
    return UElement(u.system, kept)


def evaluate_h_polynomial(u0: UElement, lam: Weight) -> int:
    """Exact integer value of a U^0 element at h_i = <lam, alpha_i^vee>."""
    total = 0
    for mono, c in u0.terms.items():
        if any(mono.f_exps) or any(mono.e_exps):
            raise ValueError("element has terms outside U^0")
        term = c
        for i, e in enumerate(mono.h_exps):
            if e:
                term *= lam.coords[i] ** e
        total += term
    return total


def chi_eval(u0: UElement, lam: Weight, p: int) -> int:
    """Value of a U^0 element at lam, reduced mod p."""
    return evaluate_h_polynomial(u0, lam) % p


def binomial_mod_p(a: int, n: int, p: int) -> int:
    """Binomial polynomial a(a-1)...(a-n+1)/n! at any integer a, mod p."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    num = 1
    for k in range(n):
        num *= a - k
    den = math.factorial(n)
    assert num % den == 0
    return (num // den) % p


def _eval_poly(poly: dict[tuple[int, ...], int], coords: tuple[int, ...]) -> int:
    total = 0
    for h_exps, c in poly.items():
        term = c
        for i, e in enumerate(h_exps):
            if e:
                term *= coords[i] ** e
        total += term
    return total


def _factorial_product(exps: tuple[int, ...]) -> int:
    out = 1
    for a in exps:
        if a > 1:
            out *= math.factorial(a)
    return out


def shapovalov_gram(
    lam: Weight,
    nu: RootVector,
    *,
    guard: SizeGuard | None = None,
    engine: PBWEngine | None = None,
) -> GramMatrix:
    """Exact integer Gram matrix of the divided-power contravariant form
    on the (lam - nu) weight space of the Verma with highest weight lam."""
    guard = guard or DEFAULT_GUARD
    rs = lam.system
    if not nu.is_nonnegative():
        raise ValueError("nu must be a nonnegative root-lattice vector")
    dim = kostant_partition(nu)
    if dim > guard.max_gram_dim:
        raise SizeGuardError(
            f"weight space dimension {dim} exceeds guard {guard.max_gram_dim}"
        )
    use_cache = engine is None
    if use_cache:
        cached = cache_store.get_value(
            "gram", rs.cartan_type, None, _gram_payload(lam, nu)
        )
        if cached is not None:
            data = json.loads(cached)
            basis = tuple(
                PBWMonomial(tuple(f), (0,) * rs.rank, (0,) * len(rs.positive_roots))
                for f in data["basis"]
            )
            entries = tuple(tuple(row) for row in data["entries"])
            return GramMatrix(lam, nu, basis, entries)
    eng = engine or get_engine(rs.cartan_type)
    exps_list, polys = eng.gram_poly_matrix(nu.coeffs, guard)
    entries = []
    for i, i_exps in enumerate(exps_list):
        row = []
        for j, j_exps in enumerate(exps_list):
            raw = _eval_poly(polys[i][j], lam.coords)
            den = _factorial_product(i_exps) * _factorial_product(j_exps)
            if raw % den != 0:
                raise ExactnessError(
                    f"divided-power value not integral at lam={lam.coords}, "
                    f"nu={nu.coeffs}, pair=({i_exps},{j_exps})"
                )
            STATS["exact_divisions"] += 1
            row.append(raw // den)
        entries.append(tuple(row))
    entries = tuple(entries)
    for i in range(dim):
        for j in range(i):
            if entries[i][j] != entries[j][i]:
                raise ExactnessError("contravariant Gram matrix is not symmetric")
    STATS["gram_matrices"] += 1
    basis = [
        PBWMonomial(exps, (0,) * rs.rank, (0,) * len(rs.positive_roots))
        for exps in exps_list
    ]
    gram = GramMatrix(lam, nu, tuple(basis), entries)
    if use_cache:
        cache_store.put_value(
            "gram",
            rs.cartan_type,
            None,
            _gram_payload(lam, nu),
            json.dumps(
                {"basis": [list(b.f_exps) for b in gram.basis],
                 "entries": [list(r) for r in entries]},
                sort_keys=True,
            ),
        )
    return gram


def _gram_payload(lam: Weight, nu: RootVector) -> str:
    return f"lam={','.join(map(str, lam.coords))};nu={','.join(map(str, nu.coeffs))}"


def rank_mod_p(rows: Iterable[Iterable[int]], p: int) -> int:
    """Rank over F_p by exact Gaussian elimination, first nonzero pivot."""
    mat = [[v % p for v in row] for row in rows]
    if not mat:
        return 0
    ncols = len(mat[0])
    rank = 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(mat)) if mat[r][c]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = pow(mat[rank][c], -1, p)
        mat[rank] = [(v * inv) % p for v in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][c]:
                factor = mat[r][c]
                mat[r] = [(a - factor * b) % p for a, b in zip(mat[r], mat[rank])]
        rank += 1
        if rank == len(mat):
            break
    return rank


def rank_rational(rows: Iterable[Iterable[int]]) -> int:
    mat = [[Fraction(v) for v in row] for row in rows]
    if not mat:
        return 0
    ncols = len(mat[0])
    rank = 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(mat)) if mat[r][c] != 0), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = 1 / mat[rank][c]
        mat[rank] = [v * inv for v in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][c] != 0:
                factor = mat[r][c]
                mat[r] = [a - factor * b for a, b in zip(mat[r], mat[rank])]
        rank += 1
        if rank == len(mat):
            break
    return rank


def simple_weight_dim(
    lam: Weight, nu: RootVector, p: int, *, guard: SizeGuard | None = None
) -> int:
    """dim of the (lam - nu) weight space of the simple head L(lam) over F_p:
    the mod-p rank of the divided-power Gram matrix."""
    rs = lam.system
    payload = _gram_payload(lam, nu)
    cached = cache_store.get_value("simple_dim", rs.cartan_type, p, payload)
    if cached is not None:
        return int(cached)
    gram = shapovalov_gram(lam, nu, guard=guard)
    r = rank_mod_p(gram.entries, p)
    cache_store.put_value("simple_dim", rs.cartan_type, p, payload, str(r))
    return r


def gram_rank_char0(
    lam: Weight, nu: RootVector, *, guard: SizeGuard | None = None
) -> int:
    """Rank of the Gram matrix over the rationals."""
    rs = lam.system
    payload = _gram_payload(lam, nu)
    cached = cache_store.get_value("rank_0", rs.cartan_type, None, payload)
    if cached is not None:
        return int(cached)
    gram = shapovalov_gram(lam, nu, guard=guard)
    r = rank_rational(gram.entries)
    cache_store.put_value("rank_0", rs.cartan_type, None, payload, str(r))
    return r
