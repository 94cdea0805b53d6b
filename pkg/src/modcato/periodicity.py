"""Shift functors on Verma-flag data and the periodicity verifier.

The up shift tensors with the finite simple of highest weight gamma and
cuts away the shifted complement; the down shift tensors with the plain
dual (weights negated, no transpose twist) and truncates back to the
original open set.  Under the no-collision hypothesis on K these act on
flag vectors as translation by gamma, and decomposition tables over K and
K + gamma must agree entrywise; both facts are checked here numerically,
each side computed independently through the full Gram pipeline.
"""

from __future__ import annotations

from dataclasses import dataclass

from .category_o import (
    FlagVector,
    _flag_tensor_char,
    build_decomposition_table,
    full_simple_character,
    projective_verma_mult,
    tensor_flag,
    truncate_flag,
)
from .charring import negate_weights
from .errors import ModcatoError
from .hypalg import SizeGuard
from .reporting import Report
from .rootdata import Weight, is_dominant
from .topology import (
    CarvedOpen,
    LocallyClosedSet,
    OpenSet,
    carve_J_Jprime,
    periodicity_condition,
    shift_set,
)


@dataclass(frozen=True)
class ShiftContext:
    """Validated data (K, gamma, p, l) with the carved open sets."""

    K: LocallyClosedSet
    gamma: Weight
    p: int
    l: int
    J: OpenSet
    Jprime: CarvedOpen
    Jt: OpenSet
    Jtprime: CarvedOpen

    @staticmethod
    def build(K: LocallyClosedSet, gamma: Weight, p: int, l: int) -> "ShiftContext":
        if l < 1:
            raise ModcatoError("the twist exponent l must be positive")
        if not is_dominant(gamma):
            raise ModcatoError(f"gamma={gamma.coords} is not dominant")
        factor = p**l
        if any(c % factor for c in gamma.coords):
            raise ModcatoError(
                f"gamma={gamma.coords} is not divisible by p^l={factor}"
            )
        if not periodicity_condition(K, p, l):
            raise ModcatoError(
                "periodicity condition fails: two region weights differ by "
                f"p^{l} times a positive root-lattice vector"
            )
        J, Jprime = carve_J_Jprime(K)
        return ShiftContext(
            K, gamma, p, l, J, Jprime, J.translate(gamma), Jprime.translate(gamma)
        )

    @property
    def Kt(self) -> LocallyClosedSet:
        return shift_set(self.K, self.gamma)


def shift_up_flag(
    ctx: ShiftContext, V: FlagVector, *, guard: SizeGuard | None = None
) -> FlagVector:
    """Tensor with L(gamma), then keep the closed complement of J~'."""
    for w in V.support():
        if w not in ctx.K:
            raise ModcatoError(f"flag support {w.coords} is not inside K")
    tensored = tensor_flag(V, ctx.gamma, ctx.p, guard=guard)
    return truncate_flag(tensored, lambda w: not ctx.Jtprime.contains(w), "closed")


def shift_down_flag(
    ctx: ShiftContext, W: FlagVector, *, guard: SizeGuard | None = None
) -> FlagVector:
    """Tensor with the lowest-weight dual of L(gamma), then truncate to J."""
    Kt = ctx.Kt
    for w in W.support():
        if w not in Kt:
            raise ModcatoError(f"flag support {w.coords} is not inside K + gamma")
    dual = negate_weights(full_simple_character(ctx.gamma, ctx.p, guard=guard).char)
    tensored = _flag_tensor_char(W, dual)
    return truncate_flag(tensored, ctx.J.contains, "open")


def verify_updown(ctx: ShiftContext, *, guard: SizeGuard | None = None) -> Report:
    """Both shift identities on every single-Verma flag over K."""
    report = Report(
        f"shift identities on K={sorted(w.coords for w in ctx.K)}, "
        f"gamma={ctx.gamma.coords}, p={ctx.p}, l={ctx.l}"
    )
    for lam in ctx.K:
        up = shift_up_flag(ctx, FlagVector({lam: 1}), guard=guard)
        report.record(
            f"up shift of Delta({lam.coords})",
            up.serialize(),
            FlagVector({lam + ctx.gamma: 1}).serialize(),
        )
        down = shift_down_flag(ctx, FlagVector({lam + ctx.gamma: 1}), guard=guard)
        report.record(
            f"down shift of Delta({(lam + ctx.gamma).coords})",
            down.serialize(),
            FlagVector({lam: 1}).serialize(),
        )
    return report


def verify_periodicity(
    ctx: ShiftContext, *, depth: int | None = None, guard: SizeGuard | None = None
) -> Report:
    """Entrywise equality of the K and K+gamma decomposition tables.

    Both tables go through the full Gram pipeline independently; nothing is
    transported from one side to the other except the final comparison.
    """
    report = Report(
        f"decomposition periodicity on K={sorted(w.coords for w in ctx.K)}, "
        f"gamma={ctx.gamma.coords}, p={ctx.p}, l={ctx.l}"
    )
    table = build_decomposition_table(ctx.K, ctx.p, depth=depth, guard=guard)
    shifted = build_decomposition_table(ctx.Kt, ctx.p, depth=depth, guard=guard)
    report.payload["table"] = table.serialize()
    report.payload["shifted_table"] = shifted.serialize()
    from .rootdata import leq

    for mu in ctx.K:
        for lam in ctx.K:
            if not leq(lam, mu):
                continue
            report.record(
                f"[Delta({mu.coords}):L({lam.coords})] vs shift by {ctx.gamma.coords}",
                table.entry(mu, lam),
                shifted.entry(mu + ctx.gamma, lam + ctx.gamma),
            )
    return report


def verify_projective_shift(
    ctx: ShiftContext, *, guard: SizeGuard | None = None
) -> Report:
    """Projective-cover Verma multiplicities restricted to K translate."""
    report = Report(
        f"projective multiplicities on K={sorted(w.coords for w in ctx.K)}, "
        f"gamma={ctx.gamma.coords}, p={ctx.p}, l={ctx.l}"
    )
    Kt = ctx.Kt
    for lam in ctx.K:
        left = projective_verma_mult(lam, ctx.J, ctx.p, guard=guard)
        left_K = left.restrict(lambda w: w in ctx.K)
        right = projective_verma_mult(lam + ctx.gamma, ctx.Jt, ctx.p, guard=guard)
        right_Kt = right.restrict(lambda w: w in Kt)
        report.record(
            f"P-mults of L({lam.coords}) on K vs shifted",
            left_K.translate(ctx.gamma).serialize(),
            right_Kt.serialize(),
        )
    return report
