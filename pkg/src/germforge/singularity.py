"""The singularity-theory tower for scalar bifurcation germs g(x, lambda):
restricted tangent spaces, tangent spaces, high- and low-order terms, normal
forms, universal unfoldings, recognition conditions, and the transformation
solver for contact equivalences f = S * g(X, Lambda)."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional, Tuple

from .intrinsic import (
    IntrinsicIdeal,
    high_order_part,
    intrinsic_from_members,
    monomial_members,
    smallest_intrinsic,
    verify_germ,
)
from .jets import Jet, LocalOrder, mdeg, monomials_upto
from .linalg import RowSpace, nullspace, solve_linear
from .localalg import ideal_span, jet_vector

NF_POLY_WARNING = (
    "The polynomial germ ring is not suitable for normal form computations."
)
UNFOLDING_POLY_WARNING = (
    "The ring of polynomial germs is not suitable for normal form "
    "computations of g."
)

_LOCAL = LocalOrder()


class NotEquivalentError(ValueError):
    """The transformation solver proved the two germs inequivalent up to the
    requested degree."""


def _unit_vector(m, monos, index):
    vec = [Fraction(0)] * len(monos)
    vec[index[m]] = Fraction(1)
    return vec


def _ordered_monomials(k: int) -> list:
    """All monomials of degree <= k, best (lowest local order key... highest
    priority) first: 1, x, lam, x^2, ..."""
    monos = monomials_upto(2, k)
    monos.sort(key=_LOCAL.key, reverse=True)
    return monos


@dataclass
class SpanSpace:
    """A subspace of the degree-<=k jet space presented as its largest
    intrinsic ideal plus finitely many extra spanning vectors."""

    intrinsic: IntrinsicIdeal
    extra: List[Jet]
    degree: int
    _space: Optional[RowSpace] = field(default=None, repr=False)

    def space(self) -> RowSpace:
        if self._space is None:
            k = self.degree
            monos = monomials_upto(2, k)
            index = {m: i for i, m in enumerate(monos)}
            sp = RowSpace(len(monos))
            for m in monos:
                if self.intrinsic.contains_monomial(m):
                    sp.add(_unit_vector(m, monos, index))
            for f in self.extra:
                sp.add(jet_vector(f, k, index))
            self._space = sp
        return self._space

    def contains(self, f: Jet) -> bool:
        return self.space().contains(jet_vector(f, self.degree))

    def codimension(self) -> int:
        monos = monomials_upto(2, self.degree)
        return len(monos) - self.space().rank

    def __str__(self) -> str:
        parts = []
        if not self.intrinsic.is_zero:
            parts.append(str(self.intrinsic))
        if self.extra:
            parts.append("{%s}" % ", ".join(str(f) for f in self.extra))
        return " + ".join(parts) if parts else "0"


def _span_to_spanspace(space: RowSpace, k: int,
                       variables=("x", "lam")) -> SpanSpace:
    members = monomial_members(space, k)
    intr = intrinsic_from_members(members, k)
    monos = monomials_upto(2, k)
    index = {m: i for i, m in enumerate(monos)}
    covered = RowSpace(len(monos))
    for m in monos:
        if intr.contains_monomial(m):
            covered.add(_unit_vector(m, monos, index))
    extra = []
    for row in list(space.rows):
        if covered.add(list(row)):
            terms = {}
            for m, c in zip(monos, row):
                if c != 0 and not intr.contains_monomial(m):
                    terms[m] = c
            f = Jet(terms, variables, k)
            if not f.is_zero():
                extra.append(f)
    return SpanSpace(intr, extra, k, _space=space)


def _rt_span(g: Jet, k: int) -> RowSpace:
    x = Jet.variable(g.variables[0], g.variables, g.degree)
    lam = Jet.variable(g.variables[1], g.variables, g.degree)
    gx = g.diff(g.variables[0])
    gens = [f for f in (g, x * gx, lam * gx) if not f.is_zero()]
    return ideal_span(gens, k)


def _t_span(g: Jet, k: int) -> RowSpace:
    gx = g.diff(g.variables[0])
    glam = g.diff(g.variables[1])
    gens = [f for f in (g, gx) if not f.is_zero()]
    if gens:
        space = ideal_span(gens, k)
    else:
        space = RowSpace(len(monomials_upto(2, k)))
    lam = Jet.variable(g.variables[1], g.variables, g.degree)
    term = glam
    for _j in range(k + 1):
        if term.is_zero():
            break
        space.add(jet_vector(term, k))
        term = term * lam
    return space


def restricted_tangent(g: Jet, k: Optional[int] = None) -> SpanSpace:
    """RT(g) = E{g} + M{g_x} on degree-<=k jets."""
    k = k if k is not None else g.degree
    g = g.truncate(k)
    return _span_to_spanspace(_rt_span(g, k), k, g.variables)


def tangent_space(g: Jet, k: Optional[int] = None) -> SpanSpace:
    """T(g) = E{g, g_x} + E_lambda{g_lambda} on degree-<=k jets."""
    k = k if k is not None else g.degree
    g = g.truncate(k)
    return _span_to_spanspace(_t_span(g, k), k, g.variables)


def tangent_perp(g: Jet, k: Optional[int] = None) -> list:
    """Monomial basis of a complement of T(g), greedily chosen from the
    lowest local-order monomials (so 1 comes first when possible)."""
    k = k if k is not None else g.degree
    g = g.truncate(k)
    space = _t_span(g, k)
    monos = monomials_upto(2, k)
    index = {m: i for i, m in enumerate(monos)}
    chosen = []
    # within a degree prefer lambda-heavy monomials, so ties between a pure
    # x power and a mixed monomial resolve toward the mixed one
    for m in sorted(monos, key=lambda m: (mdeg(m), m[0])):
        if space.add(_unit_vector(m, monos, index)):
            chosen.append(m)
    return chosen


def s_perp(g: Jet) -> list:
    """The low-order monomials: every monomial outside S(g)."""
    S = smallest_intrinsic(g)
    bound = max(kk + ll for kk, ll in S.blocks)
    out = [m for m in _ordered_monomials(bound)
           if not S.contains_monomial(m)]
    return out


def intrinsic_gens(g: Jet) -> list:
    """Block generator monomials of S(g)."""
    return smallest_intrinsic(g).generators()


@dataclass
class AlgObjects:
    rt: SpanSpace
    t: SpanSpace
    p: IntrinsicIdeal
    e_over_t: list
    s: IntrinsicIdeal
    s_perp: list
    intrinsic_generators: list
    degree: int


def alg_objects(g: Jet, k: Optional[int] = None) -> AlgObjects:
    k = k if k is not None else g.degree
    g = g.truncate(k)
    return AlgObjects(
        rt=restricted_tangent(g, k),
        t=tangent_space(g, k),
        p=high_order_part(g, k),
        e_over_t=tangent_perp(g, k),
        s=smallest_intrinsic(g),
        s_perp=s_perp(g),
        intrinsic_generators=intrinsic_gens(g),
        degree=k,
    )


# ----------------------------------------------------------- transformations


def _homogeneous_monomials(d: int) -> list:
    return [(d - j, j) for j in range(d + 1)]


def _prime_valuation(q: Fraction, p: int) -> int:
    n, e = abs(q.numerator), 0
    while n % p == 0:
        n //= p
        e += 1
    m = q.denominator
    while m % p == 0:
        m //= p
        e -= 1
    return e


def _primes_of(values) -> set:
    primes = set()
    for q in values:
        for n in (abs(q.numerator), q.denominator):
            d = 2
            while d * d <= n:
                if n % d == 0:
                    primes.add(d)
                    while n % d == 0:
                        n //= d
                d += 1
            if n > 1:
                primes.add(n)
    return primes


def _integer_particular(A, b):
    """An integer solution of A x = b, searched by forcing subsets of the
    unknowns to zero (the systems here have at most three unknowns)."""
    from itertools import combinations

    n = len(A[0]) if A else 0
    for r in range(n + 1):
        for zero in combinations(range(n), r):
            keep = [i for i in range(n) if i not in zero]
            A2 = [[row[i] for i in keep] for row in A]
            sol2 = solve_linear(A2, b)
            if sol2 is None or any(s.denominator != 1 for s in sol2):
                continue
            x = [Fraction(0)] * n
            for i, v in zip(keep, sol2):
                x[i] = v
            return x
    return None


def _solve_scaling(ratios: dict):
    """Positive rationals (s, a, c) with s * a^i * c^j = ratios[(i, j)] for
    every listed monomial, or None.  Solved prime by prime on exponents."""
    s = a = c = Fraction(1)
    for p in _primes_of(ratios.values()):
        A = [[Fraction(1), Fraction(m[0]), Fraction(m[1])] for m in ratios]
        b = [Fraction(_prime_valuation(r, p)) for r in ratios.values()]
        sol = _integer_particular(A, b)
        if sol is None:
            return None
        s *= Fraction(p) ** int(sol[0])
        a *= Fraction(p) ** int(sol[1])
        c *= Fraction(p) ** int(sol[2])
    return s, a, c


def _match_rigid(g: Jet, f: Jet):
    """Positive scalings (s, a, c) making s*g(a*x, c*lam) agree with f on the
    rigid monomials: the full lowest-order part plus the intrinsic generator
    terms.  Those terms cannot be changed by the higher-order corrections of
    the transformation loop, so they pin the scaling down."""
    d0 = g.order()
    g_low = {m for m in g.terms if mdeg(m) == d0}
    f_low = {m for m in f.terms if mdeg(m) == d0}
    if g_low != f_low:
        return None
    ggens = smallest_intrinsic(g).generators()
    if ggens != smallest_intrinsic(f).generators():
        return None
    rigid = g_low | {m for m in ggens if m in g.terms}
    ratios = {}
    for m in rigid:
        gc = g.terms.get(m)
        fc = f.terms.get(m)
        if gc is None or fc is None:
            return None
        if (gc < 0) != (fc < 0):
            return None  # positive scalings cannot flip a sign
        ratios[m] = fc / gc
    return _solve_scaling(ratios)


@dataclass
class TransformationTriple:
    X: Jet
    L: Jet
    S: Jet
    degree: int

    def apply(self, g: Jet) -> Jet:
        names = g.variables
        return self.S * g.compose({names[0]: self.X, names[1]: self.L})

    def residual(self, g: Jet, f: Jet) -> Jet:
        return f - self.apply(g)


def transformation(g: Jet, f: Jet, k: int) -> TransformationTriple:
    """Jets X, Lambda, S with f - S*g(X, Lambda) in M^k, subject to
    S(0) > 0, X_x(0) > 0, Lambda'(0) > 0.

    The lowest-order homogeneous parts are matched exactly first by positive
    scalings of x, lambda and the germ; after that every degree-by-degree
    correction strictly raises the residual order, so the loop terminates.
    Raises NotEquivalentError when a step is infeasible."""
    variables = g.variables
    g = Jet(dict(g.terms), variables, k)
    f = Jet(dict(f.terms), variables, k)
    if g.is_zero() or f.is_zero():
        if g.is_zero() and f.is_zero():
            return TransformationTriple(
                Jet.variable(variables[0], variables, k),
                Jet.variable(variables[1], variables, k),
                Jet.constant(1, variables, k), k)
        raise NotEquivalentError("not equivalent up to degree %d" % k)

    d0 = g.order()
    if f.order() != d0:
        raise NotEquivalentError("not equivalent up to degree %d" % k)
    scaling = _match_rigid(g, f)
    if scaling is None:
        raise NotEquivalentError("not equivalent up to degree %d" % k)
    s0, a0, c0 = scaling
    X = Jet.variable(variables[0], variables, k).scale(a0)
    L = Jet.variable(variables[1], variables, k).scale(c0)
    S = Jet.constant(s0, variables, k)

    for _round in range(k + 2):
        G = S * g.compose({variables[0]: X, variables[1]: L})
        r = (f - G).truncate(k - 1)
        if r.is_zero():
            break
        Gfull = g.compose({variables[0]: X, variables[1]: L})
        SGx = S * g.diff(variables[0]).compose(
            {variables[0]: X, variables[1]: L})
        SGlam = S * g.diff(variables[1]).compose(
            {variables[0]: X, variables[1]: L})
        # Newton step: solve the full linearization over every monomial of
        # degree < k at once.  Corrections to the linear parts of X and
        # Lambda stay off the table (the rigid scaling fixed them); with the
        # linear system solved exactly, the new residual consists of products
        # of two corrections, whose order is strictly higher.
        unknowns = []  # (kind, monomial, contribution jet)
        for dd in range(1, k - d0):
            for m in _homogeneous_monomials(dd):
                unknowns.append(("S", m, S * Gfull.term_mul(m)))
        oX = SGx.order() if not SGx.is_zero() else None
        if oX is not None:
            for dd in range(2, k - oX):
                for m in _homogeneous_monomials(dd):
                    unknowns.append(("X", m, SGx.term_mul(m)))
        oL = SGlam.order() if not SGlam.is_zero() else None
        if oL is not None:
            for dd in range(2, k - oL):
                unknowns.append(("L", (0, dd), SGlam.term_mul((0, dd))))
        if not unknowns:
            raise NotEquivalentError("not equivalent up to degree %d" % k)
        rows_m = [m for m in monomials_upto(2, k - 1)]
        A = [[u[2].terms.get(m, Fraction(0)) for u in unknowns]
             for m in rows_m]
        b = [r.terms.get(m, Fraction(0)) for m in rows_m]
        sol = solve_linear(A, b)
        if sol is None:
            raise NotEquivalentError("not equivalent up to degree %d" % k)
        for c, (kind, m, _contrib) in zip(sol, unknowns):
            if c == 0:
                continue
            delta = Jet.monomial(m, variables, c, k)
            if kind == "S":
                S = S + S * delta
            elif kind == "X":
                X = X + delta
            else:
                L = L + delta
    else:
        raise NotEquivalentError("not equivalent up to degree %d" % k)
    return TransformationTriple(X, L, S, k)


def equivalent(g: Jet, f: Jet, k: int) -> bool:
    try:
        transformation(g, f, k)
        return True
    except NotEquivalentError:
        return False


# ------------------------------------------------------------- normal forms


@dataclass
class NormalForm:
    germ: Jet
    degree: int
    warnings: List[str] = field(default_factory=list)
    alternatives: Optional[List[Jet]] = None


def _scaling_normalize(g: Jet) -> Jet:
    """Scale x -> a x, lambda -> b lam, g -> c g with a, b, c > 0 rational so
    that the coefficients of the intrinsic-generator terms become +-1.  Terms
    that cannot be scaled exactly keep their coefficients."""
    if g.is_zero():
        return g
    gens = set(smallest_intrinsic(g).generators())
    targets = [(m, c) for m, c in g.sorted_terms(_LOCAL) if m in gens]
    if not targets:
        return g
    # want c * a^i * b^j * coeff = +-1, i.e. the scaling solves for the
    # reciprocal of each generator coefficient's magnitude
    scaling = _solve_scaling({m: 1 / abs(co) for m, co in targets})
    if scaling is None:
        return g  # not exactly normalizable; leave as-is
    c, a, b = scaling
    terms = {}
    for m, coef in g.terms.items():
        terms[m] = coef * c * a ** m[0] * b ** m[1]
    return Jet(terms, g.variables, g.degree)


def normal_form(expand: Callable[[int], Jet], k: Optional[int] = None,
                ring: str = "fractional", want_list: bool = False,
                polynomial_input: bool = False) -> NormalForm:
    """Normal form pipeline: expand, delete high-order terms, greedily
    eliminate intermediate terms via the transformation solver, normalize
    scalable coefficients."""
    warnings = []
    if ring == "polynomial" and not polynomial_input:
        warnings.append(NF_POLY_WARNING)
    if k is None:
        rep = verify_germ(expand)
        if rep.truncation_degree is None:
            return NormalForm(expand(6), 6, warnings + rep.warnings)
        k = rep.truncation_degree
    g = expand(k)
    P = high_order_part(Jet(dict(g.terms), g.variables, k + 1), k + 1)
    terms = {m: c for m, c in g.terms.items() if not P.contains_monomial(m)}
    base = Jet(terms, g.variables, k)
    gens = set(smallest_intrinsic(base).generators()) if not base.is_zero() else set()

    def eliminate_terms(current: Jet, order_terms: list) -> Jet:
        for m in order_terms:
            if m in gens or m not in current.terms:
                continue
            candidate = current - Jet.monomial(
                m, current.variables, current.terms[m], k)
            if candidate.is_zero():
                continue
            if equivalent(g, candidate, k + 1):
                current = candidate
        return current

    support = [m for m, _c in base.sorted_terms(_LOCAL)]
    reduced = eliminate_terms(base, support)
    result = _scaling_normalize(reduced)
    alternatives = None
    if want_list:
        seen = {}
        orders = [support, list(reversed(support))]
        for ordering in orders:
            alt = _scaling_normalize(eliminate_terms(base, ordering))
            seen[tuple(sorted(alt.terms.items()))] = alt
        alternatives = list(seen.values())
    return NormalForm(result, k, warnings, alternatives)


# -------------------------------------------------------------- unfoldings


@dataclass
class UnfoldingGerm:
    body: Jet          # in variables (x, lam, a1..ap)
    params: Tuple[str, ...]

    def base(self) -> Jet:
        restricted = {}
        for m, c in self.body.terms.items():
            if any(e != 0 for e in m[2:]):
                continue
            restricted[(m[0], m[1])] = c
        return Jet(restricted, self.body.variables[:2], self.body.degree)

    def direction(self, i: int) -> Jet:
        """d(body)/d(alpha_i) at alpha = 0."""
        out = {}
        pidx = 2 + i
        for m, c in self.body.terms.items():
            if m[pidx] != 1:
                continue
            if any(e != 0 for j, e in enumerate(m[2:]) if j != i):
                continue
            out[(m[0], m[1])] = c
        return Jet(out, self.body.variables[:2], self.body.degree)

    def __str__(self) -> str:
        return str(self.body)


def make_unfolding(base: Jet, directions: List[Jet]) -> UnfoldingGerm:
    p = len(directions)
    params = tuple("a%d" % (i + 1) for i in range(p))
    variables = base.variables[:2] + params
    terms = {}
    for m, c in base.terms.items():
        terms[m + (0,) * p] = c
    for i, d in enumerate(directions):
        for m, c in d.terms.items():
            key = m + tuple(1 if j == i else 0 for j in range(p))
            terms[key] = terms.get(key, Fraction(0)) + c
    return UnfoldingGerm(Jet(terms, variables, None), params)


def universal_unfolding(expand: Callable[[int], Jet],
                        k: Optional[int] = None,
                        normalform: bool = False,
                        want_list: bool = False,
                        ring: str = "fractional",
                        polynomial_input: bool = False,
                        list_cap: int = 40):
    """A universal unfolding of g (or of its normal form): one parameter per
    monomial in a complement of T.  The list option enumerates all monomial
    complements of T, capped at `list_cap`."""
    warnings = []
    if ring == "polynomial" and not polynomial_input:
        warnings.append(UNFOLDING_POLY_WARNING)
    if normalform:
        nf = normal_form(expand, k, polynomial_input=polynomial_input)
        base = nf.germ
        k = nf.degree
        warnings.extend(nf.warnings)
    else:
        if k is None:
            rep = verify_germ(expand)
            k = rep.truncation_degree if rep.truncation_degree else 6
            warnings.extend(rep.warnings)
        base = expand(k)
    perp = tangent_perp(base, k)
    monos = [Jet.monomial(m, base.variables, 1, k) for m in perp]
    main = make_unfolding(base, monos)
    if not want_list:
        return main, warnings
    # enumerate alternative monomial complements
    p = len(perp)
    space = _t_span(base, k)
    all_monos = monomials_upto(2, k)
    index = {m: i for i, m in enumerate(all_monos)}
    candidates = [m for m in _ordered_monomials(k)
                  if not space.contains(_unit_vector(m, all_monos, index))]
    from itertools import combinations

    results = []
    for combo in combinations(candidates, p):
        trial = RowSpace(len(all_monos))
        for row in space.rows:
            trial.add(list(row))
        ok = all(trial.add(_unit_vector(m, all_monos, index)) for m in combo)
        if ok:
            results.append(make_unfolding(
                base, [Jet.monomial(m, base.variables, 1, k) for m in combo]))
            if len(results) >= list_cap:
                break
    return results, warnings


def check_universal(G: UnfoldingGerm, k: Optional[int] = None) -> str:
    """\"Yes\" when G is a universal unfolding of its own base germ."""
    base = G.base()
    if k is None:
        rep = verify_germ(lambda kk: base.truncate(kk))
        k = rep.truncation_degree if rep.truncation_degree else 6
    base_k = base.truncate(k)
    perp = tangent_perp(base_k, k)
    p = len(G.params)
    if p != len(perp):
        return "No"
    space = _t_span(base_k, k)
    added = 0
    for i in range(p):
        v = G.direction(i).truncate(k)
        if space.add(jet_vector(v, k)):
            added += 1
    return "Yes" if added == p else "No"


# -------------------------------------------------------------- recognition


def _derivative_symbol(name: str, m, param: Optional[int] = None) -> str:
    subs = ["x"] * m[0] + ["lambda"] * m[1]
    if param is not None:
        subs.append("alpha%d" % param)
    if not subs:
        return "%s(0)" % name
    return "%s_{%s}(0)" % (name, ",".join(subs))


@dataclass
class RecognitionConditions:
    zero: List[tuple]     # monomials whose derivative must vanish
    nonzero: List[tuple]  # monomials whose derivative must not vanish

    def render(self) -> str:
        zs = ", ".join("%s=0" % _derivative_symbol("f", m) for m in self.zero)
        ns = ", ".join("%s!=0" % _derivative_symbol("f", m)
                       for m in self.nonzero)
        return "zero condition=[%s], nonzero condition=[%s]" % (zs, ns)


def recognition_normal_form(g: Jet) -> RecognitionConditions:
    S = smallest_intrinsic(g)
    zero = sorted(s_perp(g), key=lambda m: (mdeg(m), m[1]))
    nonzero = sorted(S.generators(), key=lambda m: (mdeg(m), m[1]))
    return RecognitionConditions(zero, nonzero)


@dataclass
class RecognitionMatrix:
    columns: List[tuple]          # derivative monomials (a, b)
    germ_rows: List[Tuple[str, tuple]]   # (label, multiplier monomial)
    param_rows: List[int]         # parameter indices 1..p
    entries: List[List[Optional[tuple]]]
    # each entry: None (structural zero) or (coeff, name, monomial, param)

    def render(self) -> List[List[str]]:
        out = []
        for row in self.entries:
            line = []
            for e in row:
                if e is None:
                    line.append("0")
                else:
                    coeff, name, m, param = e
                    s = _derivative_symbol(name, m, param)
                    if coeff != 1:
                        s = "%s*%s" % (coeff, s)
                    line.append(s)
            out.append(line)
        return out


def recognition_unfolding(g: Jet, p: int,
                          k: Optional[int] = None) -> RecognitionMatrix:
    """The universal-unfolding recognition matrix: columns are derivative
    functionals dual to a monomial basis of E/Itr(T(g)); rows are germ
    candidates spanning T/Itr(T) followed by the p unfolding directions."""
    k = k if k is not None else g.degree
    g = g.truncate(k)
    space = _t_span(g, k)
    members = monomial_members(space, k)
    itr = intrinsic_from_members(members, k)
    monos = monomials_upto(2, k)
    index = {m: i for i, m in enumerate(monos)}
    def column_key(m):
        # evaluation first, then pure lambda derivatives, then pure x,
        # then mixed ones
        a, b = m
        if a == 0 and b == 0:
            group = 0
        elif a == 0:
            group = 1
        elif b == 0:
            group = 2
        else:
            group = 3
        return (group, mdeg(m), a)

    columns = sorted((m for m in monomials_upto(2, k)
                      if not itr.contains_monomial(m)), key=column_key)
    n = len(columns)
    if p >= n:
        raise ValueError("quotient dimension %d leaves no room for %d "
                         "parameters" % (n, p))
    # zero conditions of the germ: derivatives indexed by S-perp monomials
    zero_set = set(s_perp(g))
    gx = g.diff(g.variables[0])
    glam = g.diff(g.variables[1])
    candidates = [("g_x", (0, 0), gx), ("g_lambda", (0, 0), glam),
                  ("g", (0, 0), g)]
    for m in _ordered_monomials(2)[1:]:
        candidates.append(("g_x", m, gx.term_mul(m)))
    for j in range(1, 3):
        candidates.append(("g_lambda", (0, j), glam.term_mul((0, j))))
    covered = RowSpace(len(monos))
    for m in monos:
        if itr.contains_monomial(m):
            covered.add(_unit_vector(m, monos, index))
    germ_rows = []
    for label, mult, h in candidates:
        if len(germ_rows) == n - p:
            break
        if h.is_zero():
            continue
        if covered.add(jet_vector(h.truncate(k), k, index)):
            germ_rows.append((label, mult))
    if len(germ_rows) < n - p:
        raise ValueError(
            "could not span T/Itr(T) (quotient dimension %d) from the "
            "candidate germ list" % n)
    entries = []
    for label, mult in germ_rows:
        base_m = (1, 0) if label == "g_x" else (0, 1) if label == "g_lambda" \
            else (0, 0)
        row = []
        for col in columns:
            # functional d^col applied to mult * (d^base_m g): nonzero only
            # when col >= mult componentwise
            if col[0] < mult[0] or col[1] < mult[1]:
                row.append(None)
                continue
            eff = (col[0] - mult[0] + base_m[0], col[1] - mult[1] + base_m[1])
            coeff = Fraction(1)
            for total, used in ((col[0], mult[0]), (col[1], mult[1])):
                for i in range(used):
                    coeff *= total - i
            if coeff == 0:
                row.append(None)
                continue
            if eff in zero_set:
                row.append(None)  # vanishes by the recognition conditions
            else:
                row.append((coeff, "g", eff, None))
        entries.append(row)
    for i in range(1, p + 1):
        entries.append([(Fraction(1), "G", col, i) for col in columns])
    return RecognitionMatrix(columns, germ_rows, list(range(1, p + 1)),
                             entries)


def recognition_matrix_value(matrix: RecognitionMatrix, g: Jet,
                             G: UnfoldingGerm) -> Fraction:
    """Evaluate the symbolic recognition matrix on a concrete unfolding and
    return its determinant."""

    def fact(n):
        out = 1
        for i in range(2, n + 1):
            out *= i
        return out

    def deriv(h: Jet, m) -> Fraction:
        c = h.terms.get(m, Fraction(0))
        return c * fact(m[0]) * fact(m[1])

    vals = []
    for row in matrix.entries:
        line = []
        for e in row:
            if e is None:
                line.append(Fraction(0))
            else:
                coeff, name, m, param = e
                if name == "g":
                    line.append(coeff * deriv(g, m))
                else:
                    line.append(coeff * deriv(G.direction(param - 1), m))
        vals.append(line)
    # Bareiss-free plain fraction Gaussian elimination
    n = len(vals)
    det = Fraction(1)
    for c in range(n):
        pivot = next((r for r in range(c, n) if vals[r][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            vals[c], vals[pivot] = vals[pivot], vals[c]
            det = -det
        det *= vals[c][c]
        inv = 1 / vals[c][c]
        for r in range(c + 1, n):
            f = vals[r][c] * inv
            if f != 0:
                vals[r] = [a - f * b for a, b in zip(vals[r], vals[c])]
    return det
