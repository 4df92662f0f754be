"""Standard-basis machinery for local and global monomial orders.

Local computations use Mora's tangent-cone algorithm: division carries a unit
multiplier, reducer selection is guided by the ecart, and intermediate
results join the divisor list.  Global computations fall back to classical
Buchberger/polynomial division.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

from .jets import (
    BlockOrder,
    GrLexOrder,
    Jet,
    LocalOrder,
    MonomialOrder,
    mdeg,
    mdiv,
    mdivides,
    mlcm,
    mmul,
    monomials_upto,
)
from .linalg import RowSpace

_MAX_REDUCTION_STEPS = 200_000


class InfiniteCodimensionError(ValueError):
    """The ideal is of infinite codimension."""


@dataclass
class DivisionResult:
    quotients: List[Jet]
    remainder: Jet
    unit: Jet

    def check(self, g: Jet, divisors: List[Jet]) -> bool:
        lhs = self.unit * g
        rhs = self.remainder
        for q, f in zip(self.quotients, divisors):
            rhs = rhs + q * f
        return lhs == rhs


def _weak_nf(g: Jet, G: List[Jet], order: MonomialOrder):
    """Mora weak normal form.  Returns (h, unit, quotients) with
    unit*g = sum(quotients_i * G_i) + h and either h = 0 or the leading term
    of h divisible by no divisor.  Classical division step for global
    orders."""
    variables = g.variables
    one = Jet.constant(1, variables, g.degree)
    zero = Jet.zero(variables, g.degree)
    h, unit = g, one
    quots = [zero] * len(G)
    # reducers: (jet, index-into-G or None, unit, quotients); the latter two
    # give the representation of intermediate results added by Mora's rule
    reducers = [(f, i, None, None) for i, f in enumerate(G)]
    local = order.is_local
    steps = 0
    while not h.is_zero():
        steps += 1
        if steps > _MAX_REDUCTION_STEPS:
            raise RuntimeError("division did not terminate within the step cap")
        lm, lc = h.leading_term(order)
        candidates = [t for t in reducers
                      if mdivides(t[0].leading_monomial(order), lm)]
        if not candidates:
            break
        if local:
            chosen = min(
                candidates,
                key=lambda t: (t[0].ecart(order), t[1] is None,
                               t[1] if t[1] is not None else 0),
            )
            if chosen[0].ecart(order) > h.total_degree() - mdeg(lm):
                reducers.append((h, None, unit, list(quots)))
        else:
            chosen = candidates[0]
        f, idx, f_unit, f_quots = chosen
        fm, fc = f.leading_term(order)
        m = mdiv(lm, fm)
        c = lc / fc
        h = h - f.term_mul(m, c)
        if idx is not None:
            quots[idx] = quots[idx] + Jet.monomial(m, variables, c, g.degree)
        else:
            unit = unit - f_unit.term_mul(m, c)
            quots = [q - fq.term_mul(m, c) for q, fq in zip(quots, f_quots)]
    return h, unit, quots


def mora_divide(g: Jet, G: List[Jet], order: MonomialOrder,
                k: Optional[int] = None, tail: bool = True) -> DivisionResult:
    """Divide g by the list G.  For a local order this is Mora's division with
    a unit multiplier; for a global order the unit stays 1.  With `tail` the
    remainder is fully reduced: none of its terms is divisible by a divisor
    leading monomial."""
    if not G or any(f.is_zero() for f in G):
        raise ValueError("divisor list must be nonempty and zero-free")
    variables = g.variables
    if k is not None:
        g = g.truncate(k)
        G = [f.truncate(k) for f in G]
    one = Jet.constant(1, variables, g.degree)
    zero = Jet.zero(variables, g.degree)

    # invariant: unit * g = sum(quots_i * G_i) + remainder + work
    unit, remainder, work = one, zero, g
    quots = [zero] * len(G)
    rounds = 0
    while not work.is_zero():
        rounds += 1
        if rounds > _MAX_REDUCTION_STEPS:
            raise RuntimeError("division did not terminate within the step cap")
        h, u, q = _weak_nf(work, G, order)
        if g.degree is not None:
            # truncated ring: units invert exactly, so fold the unit into the
            # quotients and keep the overall unit equal to 1
            uinv = u.invert()
            quots = [qi + uinv * qq for qi, qq in zip(quots, q)]
            if h.is_zero():
                work = zero
            else:
                lm, lc = h.leading_term(order)
                lead = Jet.monomial(lm, variables, lc, h.degree)
                remainder = remainder + lead
                work = (uinv - one) * lead + uinv * (h - lead)
        else:
            unit = u * unit
            quots = [u * qi + qq for qi, qq in zip(quots, q)]
            extra = (u - one) * remainder
            if h.is_zero():
                work = extra
            else:
                lm, lc = h.leading_term(order)
                lead = Jet.monomial(lm, variables, lc, h.degree)
                remainder = remainder + lead
                work = extra + (h - lead)
        if not tail:
            remainder = remainder + work
            break
    return DivisionResult(quots, remainder, unit)


@dataclass
class StandardBasis:
    generators: List[Jet]
    order: MonomialOrder
    degree: Optional[int]
    warning: Optional[str] = None
    certified: bool = True
    _leads: Optional[list] = field(default=None, repr=False)

    def leading_monomials(self):
        if self._leads is None:
            self._leads = [g.leading_monomial(self.order) for g in self.generators]
        return self._leads

    def reduce(self, f: Jet) -> Jet:
        if f.is_zero():
            return f
        return mora_divide(f, self.generators, self.order, self.degree).remainder

    def contains(self, f: Jet) -> bool:
        f = f.truncate(self.degree) if self.degree is not None else f
        return f.is_zero() or self.reduce(f).is_zero()


def _spoly(f: Jet, g: Jet, order: MonomialOrder) -> Jet:
    fm, fc = f.leading_term(order)
    gm, gc = g.leading_term(order)
    lcm = mlcm(fm, gm)
    return f.term_mul(mdiv(lcm, fm), 1 / fc) - g.term_mul(mdiv(lcm, gm), 1 / gc)


def _basis_loop(G: List[Jet], order: MonomialOrder, k: Optional[int]) -> List[Jet]:
    basis = []
    for g in G:
        g = g.truncate(k) if k is not None else g
        if not g.is_zero():
            basis.append(g.monic(order))
    if not basis:
        return []
    pairs = {(i, j) for i in range(len(basis)) for j in range(i)}
    while pairs:
        # deterministic queue: smallest lcm first under the order's key
        i, j = min(
            pairs,
            key=lambda p: (
                order.key(
                    mlcm(
                        basis[p[0]].leading_monomial(order),
                        basis[p[1]].leading_monomial(order),
                    )
                ),
                p,
            ),
        )
        pairs.discard((i, j))
        fi, fj = basis[i], basis[j]
        mi = fi.leading_monomial(order)
        mj = fj.leading_monomial(order)
        lcm = mlcm(mi, mj)
        if lcm == mmul(mi, mj):  # coprime leading terms: S-pair reduces to 0
            continue
        if k is not None and mdeg(lcm) > k:
            continue
        s = _spoly(fi, fj, order)
        if s.is_zero():
            continue
        r = mora_divide(s, basis, order, k, tail=False).remainder
        if r.is_zero():
            continue
        r = r.monic(order)
        basis.append(r)
        new = len(basis) - 1
        pairs.update((new, t) for t in range(new))
    return basis


def _strip_unit_factor(g: Jet) -> Jet:
    """Replace g = m * u (monomial times unit) by the monomial m; locally
    they generate the same ideal."""
    if g.is_zero():
        return g
    monomials = list(g.terms)
    common = tuple(min(m[i] for m in monomials) for i in range(len(g.variables)))
    if all(e == 0 for e in common):
        return g
    if common in g.terms and all(
        mdeg(m) > mdeg(common) for m in monomials if m != common
    ):
        return Jet.monomial(common, g.variables, Fraction(1), g.degree)
    return g


def _interreduce(basis: List[Jet], order: MonomialOrder, k: Optional[int]) -> List[Jet]:
    # discard generators whose leading monomial is a multiple of another's
    kept = []
    for i, g in enumerate(basis):
        lm = g.leading_monomial(order)
        redundant = False
        for j, h in enumerate(basis):
            if i == j:
                continue
            lm2 = h.leading_monomial(order)
            if mdivides(lm2, lm) and (lm2 != lm or j < i):
                redundant = True
                break
        if not redundant:
            kept.append(g)
    if order.is_local:
        kept = [_strip_unit_factor(g) for g in kept]
    # fully reduce each survivor against the others
    out = []
    for i, g in enumerate(kept):
        others = kept[:i] + kept[i + 1 :]
        if others:
            lm, lc = g.leading_term(order)
            tail_part = g - Jet.monomial(lm, g.variables, lc, g.degree)
            if not tail_part.is_zero():
                # untruncated local tails can reduce to infinite series, so
                # only weak-normalize them in that case
                full = k is not None or not order.is_local
                r = mora_divide(tail_part, others, order, k, tail=full).remainder
                g = Jet.monomial(lm, g.variables, lc, g.degree) + r
        out.append(g.monic(order))
    out.sort(key=lambda g: order.key(g.leading_monomial(order)), reverse=True)
    return out


def standard_basis(G: List[Jet], order: Optional[MonomialOrder] = None,
                   k: Optional[int] = None,
                   check_stability: bool = True) -> StandardBasis:
    """Inter-reduced standard basis of <G> (Groebner basis for a global
    order).  With a truncation degree the result is checked for stability by
    recomputing at k+1; an unstable leading-term ideal only sets a warning."""
    order = order or LocalOrder()
    if not G:
        raise ValueError("empty generating list")
    basis = _interreduce(_basis_loop(G, order, k), order, k)
    sb = StandardBasis(basis, order, k)
    if k is not None and check_stability and basis:
        lifted = [g.truncate(None).truncate(k + 1) for g in G]
        higher = _interreduce(_basis_loop(lifted, order, k + 1), order, k + 1)
        lt_low = {g.leading_monomial(order) for g in basis}
        lt_high = {
            h.leading_monomial(order)
            for h in higher
            if mdeg(h.leading_monomial(order)) <= k
        }
        if lt_low != lt_high:
            sb.certified = False
            sb.warning = (
                "The truncation degree is not sufficiently high and thus, "
                "the following results might be wrong."
            )
    return sb


def buchberger(G: List[Jet], order: Optional[MonomialOrder] = None) -> List[Jet]:
    """Reduced Groebner basis in the polynomial ring (global order, no
    truncation)."""
    order = order or GrLexOrder()
    if order.is_local:
        raise ValueError("buchberger requires a global order")
    G = [g.truncate(None) for g in G]
    return _interreduce(_basis_loop(G, order, None), order, None)


def ideal_membership(f: Jet, B: StandardBasis) -> bool:
    return B.contains(f)


def _with_t(f: Jet, tvars) -> Jet:
    return f.truncate(None).rename(tvars)


def ideal_intersection(I: List[Jet], J: List[Jet],
                       k: Optional[int] = None) -> List[Jet]:
    """Generators of <I> ∩ <J>, via the t-trick in the polynomial ring; with a
    truncation degree the result is re-normalized by a local standard basis."""
    if not I or not J:
        raise ValueError("both generator lists must be nonempty")
    variables = I[0].variables
    tvars = ("_t",) + variables
    t = Jet.variable("_t", tvars)
    one = Jet.constant(1, tvars)
    gens = [t * _with_t(f, tvars) for f in I]
    gens += [(one - t) * _with_t(g, tvars) for g in J]
    gb = buchberger(gens, BlockOrder(1))
    out = []
    for g in gb:
        if all(m[0] == 0 for m in g.terms):
            out.append(g.restrict(variables))
    if not out:
        return []
    if k is not None:
        out = [g.truncate(k) for g in out]
        out = [g for g in out if not g.is_zero()]
        if out:
            out = standard_basis(out, LocalOrder(), k, check_stability=False).generators
    return out


def colon_ideal(I: List[Jet], g: Jet, k: Optional[int] = None) -> List[Jet]:
    """Generators of the colon ideal I : <g> in the local ring: a local
    standard basis {h_i} of I ∩ <g> is divided exactly by g (the Mora unit is
    absorbed, which changes generators only by unit factors)."""
    if g.is_zero():
        raise ValueError("colon by the zero germ")
    if g.constant_term() != 0:
        # colon by a unit is the ideal itself
        return list(I)
    inter = ideal_intersection(I, [g], None)
    if not inter:
        return []
    sb = standard_basis(inter, LocalOrder(), None, check_stability=False)
    out = []
    for h in sb.generators:
        res = mora_divide(h, [g], LocalOrder(), None, tail=False)
        if not res.remainder.is_zero():
            raise ArithmeticError(
                "intersection generator not divisible by g; this indicates an "
                "internal inconsistency"
            )
        q = res.quotients[0]
        if k is not None:
            q = q.truncate(k)
        if not q.is_zero():
            out.append(q.primitive())
    return out


def _pure_power_bounds(sb: StandardBasis):
    """Per-variable minimal pure-power exponents in the leading-term ideal,
    or None where there is no pure power."""
    nvars = len(sb.generators[0].variables) if sb.generators else 0
    bounds = [None] * nvars
    for lm in sb.leading_monomials():
        support = [i for i, e in enumerate(lm) if e]
        if len(support) == 1:
            i = support[0]
            if bounds[i] is None or lm[i] < bounds[i]:
                bounds[i] = lm[i]
        elif len(support) == 0:
            return [0] * nvars
    return bounds


def normal_set(I, k: Optional[int] = None) -> list:
    """Standard monomials of <I>: the monomial basis of E/<I>, ordered by the
    local order descending (1 first).  `I` may be a generator list or a
    precomputed StandardBasis."""
    sb = I if isinstance(I, StandardBasis) else standard_basis(
        I, LocalOrder(), k, check_stability=False)
    if not sb.generators:
        raise InfiniteCodimensionError("the ideal is of infinite codimension")
    bounds = _pure_power_bounds(sb)
    if any(b is None for b in bounds):
        raise InfiniteCodimensionError("the ideal is of infinite codimension")
    leads = sb.leading_monomials()
    order = sb.order
    out = []
    # a standard monomial has every exponent below the pure-power bound
    for m in monomials_upto(len(bounds), sum(bounds)):
        if any(e >= b for e, b in zip(m, bounds)):
            continue
        if k is not None and mdeg(m) > k:
            continue
        if not any(mdivides(lm, m) for lm in leads):
            out.append(m)
    out.sort(key=order.key, reverse=True)
    return out


def codimension(I, k: Optional[int] = None):
    """Number of standard monomials, or None for infinite codimension."""
    try:
        return len(normal_set(I, k))
    except InfiniteCodimensionError:
        return None


def mult_matrix(A, u, k: Optional[int] = None):
    """Matrix of multiplication by the monomial u on E/<A> in the normal-set
    basis (descending local order).  Returns (matrix, basis)."""
    sb = A if isinstance(A, StandardBasis) else standard_basis(
        A, LocalOrder(), k, check_stability=False)
    basis = normal_set(sb, k)
    variables = sb.generators[0].variables
    index = {m: i for i, m in enumerate(basis)}
    n = len(basis)
    matrix = [[Fraction(0)] * n for _ in range(n)]
    for j, b in enumerate(basis):
        prod = Jet.monomial(mmul(tuple(u), b), variables, 1, sb.degree)
        if prod.is_zero():
            continue
        r = sb.reduce(prod)
        for m, c in r.terms.items():
            if m not in index:
                raise ArithmeticError("reduction left a non-standard monomial")
            matrix[index[m]][j] = c
    return matrix, basis


def ideal_span(G: List[Jet], k: int) -> RowSpace:
    """Brute-force coefficient span of {m*f : f in G, deg(m*f) <= k} in the
    degree-<=k jet space.  Used as the independent membership oracle."""
    variables = G[0].variables
    monos = monomials_upto(len(variables), k)
    index = {m: i for i, m in enumerate(monos)}
    space = RowSpace(len(monos))
    for f in G:
        f = f.truncate(k)
        if f.is_zero():
            continue
        for m in monos:
            prod = f.term_mul(m)
            if prod.is_zero():
                continue
            vec = [Fraction(0)] * len(monos)
            for mm, c in prod.terms.items():
                vec[index[mm]] = c
            space.add(vec)
    return space


def jet_vector(f: Jet, k: int, index=None):
    """Coefficient vector of a jet in the degree-<=k monomial basis."""
    monos = monomials_upto(len(f.variables), k)
    if index is None:
        index = {m: i for i, m in enumerate(monos)}
    vec = [Fraction(0)] * len(monos)
    for m, c in f.truncate(k).terms.items():
        vec[index[m]] = c
    return vec


def _jet_to_sympy(f: Jet, syms):
    import sympy

    expr = sympy.Integer(0)
    for m, c in f.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for s, e in zip(syms, m):
            if e:
                term *= s ** e
        expr += term
    return expr


def _sympy_to_jet(expr, names) -> Jet:
    import sympy

    syms = [sympy.Symbol(n) for n in names]
    poly = sympy.Poly(sympy.expand(expr), *syms, domain="QQ")
    terms = {}
    for m, c in poly.terms():
        terms[tuple(int(e) for e in m)] = Fraction(c.p, c.q)
    return Jet(terms, tuple(names), None)


def _normalize_poly(expr, syms):
    """Content-free squarefree part with a positive coefficient on the
    lexicographically first term."""
    import sympy

    expr = sympy.expand(expr)
    if expr.is_zero:
        return expr
    _, factors = sympy.factor_list(expr)
    out = sympy.Integer(1)
    for base, _mult in factors:
        out *= base
    poly = sympy.Poly(out, *syms, domain="QQ")
    if not poly.free_symbols:
        return sympy.Integer(1)
    monoms = sorted(poly.terms(), key=lambda t: t[0], reverse=True)
    lead = monoms[0][1]
    coeffs = [c for _m, c in poly.terms()]
    from math import gcd

    num = 0
    den = 1
    for c in coeffs:
        num = gcd(num, abs(c.p))
        den = den * c.q // gcd(den, c.q)
    scale = sympy.Rational(den, num) if num else sympy.Integer(1)
    if lead < 0:
        scale = -scale
    return sympy.expand(out * scale)


def _sample_witnesses(F: List[Jet], drop, kept, count=8, seed=7):
    """Rational points on the projection of V(F): sample the dropped
    variables and solve the remaining (typically linear) system for the kept
    ones."""
    import random

    import sympy

    rng = random.Random(seed)
    variables = F[0].variables
    syms = {n: sympy.Symbol(n) for n in variables}
    polys = [_jet_to_sympy(f, [syms[n] for n in variables]) for f in F]
    kept_syms = [syms[n] for n in kept]
    witnesses = []
    attempts = 0
    while len(witnesses) < count and attempts < count * 12:
        attempts += 1
        subs = {
            syms[n]: sympy.Rational(rng.randint(-40, 40), rng.randint(1, 7))
            for n in drop
        }
        system = [sympy.expand(p.subs(subs)) for p in polys]
        if any(p.is_number and p != 0 for p in system):
            continue
        system = [p for p in system if not p.is_number]
        try:
            sols = sympy.solve(system, kept_syms, dict=True)
        except Exception:
            continue
        for sol in sols:
            if len(sol) != len(kept_syms):
                continue  # positive-dimensional fibre; skip
            if all(v.is_rational for v in sol.values()):
                witnesses.append({n: sol[syms[n]] for n in kept})
    return witnesses


def eliminate(F: List[Jet], drop, witnesses=None) -> List[Jet]:
    """Polynomials cutting out the closure of the projection of V(F) onto the
    variables not in `drop`.  Iterated resultants, squarefree and content
    reduction, with extraneous factors removed by witness substitution.

    Returns [] when the projection is dense and [1] when V(F) is empty."""
    import sympy

    variables = F[0].variables
    drop = list(drop)
    kept = [n for n in variables if n not in drop]
    syms = {n: sympy.Symbol(n) for n in variables}
    polys = [_jet_to_sympy(f, [syms[n] for n in variables]) for f in F]
    polys = [p for p in polys if not p.is_zero]
    if any(p.is_number for p in polys):
        return [Jet.constant(1, tuple(kept), None)]
    # innermost variable (last in the variable list) first
    for name in sorted(drop, key=variables.index, reverse=True):
        v = syms[name]
        having = [p for p in polys if v in p.free_symbols]
        others = [p for p in polys if v not in p.free_symbols]
        having.sort(key=lambda p: sympy.degree(p, v))
        new = list(others)
        if len(having) >= 2:
            pivot = having[0]
            for p in having[1:]:
                r = sympy.expand(sympy.resultant(pivot, p, v))
                if r.is_zero:
                    continue
                if r.is_number:
                    return [Jet.constant(1, tuple(kept), None)]
                new.append(r)
        polys = new
    all_syms = [syms[n] for n in variables]
    polys = [_normalize_poly(p, all_syms) for p in polys]
    polys = [p for p in polys if not p.is_number]
    if not polys:
        return []
    if witnesses is None:
        witnesses = _sample_witnesses(F, drop, kept)
    if witnesses:
        pts = [{syms[n]: w[n] for n in kept} for w in witnesses]
        filtered = []
        for p in polys:
            _, factors = sympy.factor_list(p)
            keep = sympy.Integer(1)
            for base, _mult in factors:
                if base.is_number:
                    continue
                vals = [base.subs(pt) for pt in pts]
                if all(abs(sympy.nsimplify(v)) == 0 if v.is_rational
                       else abs(complex(v)) < 1e-9 for v in vals):
                    keep *= base
            if keep != 1:
                filtered.append(_normalize_poly(keep, all_syms))
        polys = filtered
        if not polys:
            return []
    seen = set()
    out = []
    for p in polys:
        key = sympy.srepr(sympy.expand(p))
        if key not in seen:
            seen.add(key)
            out.append(_sympy_to_jet(p, kept))
    return out
