"""Intrinsic ideals in two variables and the ring/degree verification.

An intrinsic ideal is invariant under contact equivalences; in two variables
every one is a finite sum of blocks M^k<lambda^l>.  The block calculus below
(membership, canonical forms, the largest intrinsic ideal inside a space)
underlies normal forms and recognition.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from .jets import Jet, LocalOrder, mdeg, monomials_upto
from .linalg import RowSpace
from .localalg import ideal_span, jet_vector, standard_basis

DEFAULT_UPPER_BOUND = 20

INCREASE_BOUND_WARNING = "Increase the upper bound for the truncation degree!"
INFINITE_CODIM_REMARK = "the ideal is of infinite codimension"


def _block_contains(outer: Tuple[int, int], inner: Tuple[int, int]) -> bool:
    """Is M^k1<lambda^l1> (inner) a subset of M^k2<lambda^l2> (outer)?"""
    k2, l2 = outer
    k1, l1 = inner
    return l1 >= l2 and k1 + l1 >= k2 + l2


def canonical_blocks(blocks) -> list:
    """Reduced block list: minimal k per l, containments dropped, sorted with
    l strictly increasing (and hence k strictly decreasing)."""
    best = {}
    for k, l in blocks:
        if l not in best or k < best[l]:
            best[l] = k
    items = sorted(best.items())  # (l, k)
    out = []
    for l, k in items:
        if any(_block_contains(b, (k, l)) for b in out):
            continue
        out = [b for b in out if not _block_contains((k, l), b)]
        out.append((k, l))
    out.sort(key=lambda b: b[1])
    return out


@dataclass(frozen=True)
class IntrinsicIdeal:
    """A sum of blocks M^k<lambda^l> in canonical form."""

    blocks: Tuple[Tuple[int, int], ...]

    @classmethod
    def from_blocks(cls, blocks) -> "IntrinsicIdeal":
        return cls(tuple(canonical_blocks(blocks)))

    @property
    def is_zero(self) -> bool:
        return not self.blocks

    def contains_monomial(self, m) -> bool:
        a, b = m
        return any(b >= l and a + b >= k + l for k, l in self.blocks)

    def contains(self, f: Jet) -> bool:
        return all(self.contains_monomial(m) for m in f.terms)

    def multiply_maximal(self, times: int = 1) -> "IntrinsicIdeal":
        """The product M^times * I: each block M^k<lambda^l> becomes
        M^(k+times)<lambda^l>."""
        return IntrinsicIdeal.from_blocks(
            [(k + times, l) for k, l in self.blocks]
        )

    def add(self, other: "IntrinsicIdeal") -> "IntrinsicIdeal":
        return IntrinsicIdeal.from_blocks(self.blocks + other.blocks)

    def generators(self) -> list:
        """One monomial generator x^k*lambda^l per block."""
        return [(k, l) for k, l in self.blocks]

    def monomials_upto(self, bound: int) -> list:
        return [
            m for m in monomials_upto(2, bound) if self.contains_monomial(m)
        ]

    def __str__(self) -> str:
        if not self.blocks:
            return "0"
        parts = []
        for k, l in self.blocks:
            piece = ""
            if k == 1:
                piece = "M"
            elif k > 1:
                piece = "M^%d" % k
            if l == 1:
                piece += "<lambda>"
            elif l > 1:
                piece += "<lambda^%d>" % l
            if not piece:
                piece = "<1>"
            parts.append(piece)
        return " + ".join(parts)


def monomial_members(space: RowSpace, k: int) -> set:
    """All monomials of degree <= k whose coefficient vector lies in the
    span."""
    monos = monomials_upto(2, k)
    out = set()
    for i, m in enumerate(monos):
        vec = [Fraction(0)] * len(monos)
        vec[i] = Fraction(1)
        if space.contains(vec):
            out.add(m)
    return out


def span_with_extra(I: List[Jet], extra: Optional[List[Jet]], k: int) -> RowSpace:
    """Jet-space span of the ideal generated by I plus the plain linear span
    of `extra`."""
    if I:
        space = ideal_span(I, k)
    else:
        space = RowSpace(len(monomials_upto(2, k)))
    for f in extra or []:
        space.add(jet_vector(f, k))
    return space


@dataclass
class IntrinsicResult:
    ideal: IntrinsicIdeal
    remark: Optional[str] = None


def intrinsic_from_members(members: set, k: int) -> IntrinsicIdeal:
    """Largest intrinsic ideal whose degree-<=k monomials all lie in the
    given member set."""
    blocks = []
    for l in range(k + 1):
        for a in range(k - l + 1):
            block_ok = all(
                (m in members)
                for m in monomials_upto(2, k)
                if m[1] >= l and m[0] + m[1] >= a + l
            )
            if block_ok:
                blocks.append((a, l))
                break
    return IntrinsicIdeal.from_blocks(blocks)


def intrinsic_part(I: List[Jet], extra: Optional[List[Jet]] = None,
                   k: Optional[int] = None) -> IntrinsicResult:
    """Largest intrinsic ideal contained in <I> + span(extra) modulo degree
    k.  Infinite codimension is reported as a remark, not an error."""
    if k is None:
        degrees = [f.total_degree() for f in list(I) + list(extra or [])
                   if not f.is_zero()]
        k = max(degrees) + 1 if degrees else 1
    space = span_with_extra(I, extra, k)
    members = monomial_members(space, k)
    ideal = intrinsic_from_members(members, k)
    remark = None
    if not any(l == 0 for _k, l in ideal.blocks):
        remark = INFINITE_CODIM_REMARK
    return IntrinsicResult(ideal, remark)


def smallest_intrinsic(g: Jet) -> IntrinsicIdeal:
    """The smallest intrinsic ideal containing g: the sum of M^a<lambda^b>
    over the support monomials x^a*lambda^b."""
    if g.is_zero():
        raise ValueError("smallest_intrinsic of the zero germ")
    return IntrinsicIdeal.from_blocks([(a, b) for a, b in g.terms])


@dataclass
class VerifyReport:
    permissible_rings: List[str]
    truncation_degree: Optional[int]
    recommended_ring: Optional[str] = None
    warnings: List[str] = field(default_factory=list)


def _restricted_tangent_gens(g: Jet) -> List[Jet]:
    gx = g.diff(g.variables[0])
    x = Jet.variable(g.variables[0], g.variables, g.degree)
    lam = Jet.variable(g.variables[1], g.variables, g.degree)
    return [g, x * gx, lam * gx]


def high_order_part(g: Jet, k: int) -> IntrinsicIdeal:
    """P(g), the ideal of negligible high-order terms: the largest intrinsic
    ideal inside M*RT(g) = M{g} + M^2{g_x}, from the degree-k jet."""
    gk = g.truncate(k)
    x = Jet.variable(gk.variables[0], gk.variables, gk.degree)
    lam = Jet.variable(gk.variables[1], gk.variables, gk.degree)
    gx = gk.diff(gk.variables[0])
    gens = [x * gk, lam * gk,
            x * x * gx, x * lam * gx, lam * lam * gx]
    gens = [f for f in gens if not f.is_zero()]
    if not gens:
        return IntrinsicIdeal.from_blocks([])
    return intrinsic_part(gens, None, k).ideal


def _is_polynomial_expr(tree) -> bool:
    from .germexpr import BinOp, Func, Num, Pow, Var

    if isinstance(tree, (Num, Var)):
        return True
    if isinstance(tree, Func):
        return False
    if isinstance(tree, Pow):
        return _is_polynomial_expr(tree.base)
    if isinstance(tree, BinOp):
        if tree.op == "/":
            return isinstance(tree.right, Num)
        return _is_polynomial_expr(tree.left) and _is_polynomial_expr(tree.right)
    return False


def _upper_bound(opt: Optional[int]) -> int:
    if opt is not None:
        return opt
    env = os.environ.get("GERMFORGE_MAX_DEGREE")
    if env:
        try:
            return int(env)
        except ValueError:
            pass
    return DEFAULT_UPPER_BOUND


def verify_germ(expand, upper_bound: Optional[int] = None,
                polynomial_input: bool = False) -> VerifyReport:
    """Least truncation degree k with M^(k+1) inside P(g's k-jet) and the
    block form of P stable from k to k+1.  `expand` maps a degree to the jet
    of g at that degree."""
    bound = _upper_bound(upper_bound)
    for k in range(1, bound + 1):
        g = expand(k)
        if g.is_zero():
            continue
        # work one degree above the jet so the M^(k+1) boundary is visible
        lifted = Jet(dict(g.terms), g.variables, k + 1)
        p_low = high_order_part(lifted, k + 1)
        boundary = [m for m in monomials_upto(2, k + 1) if mdeg(m) == k + 1]
        if not all(p_low.contains_monomial(m) for m in boundary):
            continue
        g_high = expand(k + 1)
        lifted_high = Jet(dict(g_high.terms), g_high.variables, k + 2)
        p_high = high_order_part(lifted_high, k + 2)
        if p_low.blocks != p_high.blocks:
            continue
        rings = ["smooth", "formal"]
        sb = standard_basis([expand(k)], LocalOrder(), k)
        if sb.certified:
            rings.append("fractional")
        if polynomial_input:
            rings.append("polynomial")
        return VerifyReport(rings, k, recommended_ring="fractional"
                            if "fractional" in rings else "formal")
    return VerifyReport(["smooth", "formal"], None,
                        warnings=[INCREASE_BOUND_WARNING])


def verify_ideal(G: List[Jet], upper_bound: Optional[int] = None) -> VerifyReport:
    """Least truncation degree with finite codimension and a leading-term
    stable standard basis."""
    from .localalg import codimension

    bound = _upper_bound(upper_bound)
    for k in range(1, bound + 1):
        Gk = [f.truncate(None).truncate(k) for f in G]
        Gk = [f for f in Gk if not f.is_zero()]
        if not Gk:
            continue
        if codimension(Gk, k) is None:
            continue
        sb = standard_basis(Gk, LocalOrder(), k)
        if not sb.certified:
            continue
        rings = ["smooth", "formal", "fractional"]
        return VerifyReport(rings, k, recommended_ring="fractional")
    return VerifyReport(["smooth", "formal"], None,
                        warnings=[INCREASE_BOUND_WARNING])
