"""Transition sets, boundary non-persistence, persistent-diagram region
catalogs, zero-set tracing, and SVG/CSV emission for unfolded germs
G(x, lambda, alpha)."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .jets import Jet, mdeg
from .localalg import _jet_to_sympy, _normalize_poly, _sympy_to_jet, eliminate
from .singularity import UnfoldingGerm

TOL = 1e-9

COLORS = {
    # interior transition set (the figure convention)
    "B": "#0000FF",
    "H": "#008000",
    "D": "#FF0000",
    # boundary families reuse the interior colors where they coincide and a
    # documented palette of warm shades otherwise
    "L_B": "#0000FF",
    "L_H": "#008000",
    "G_D": "#FF0000",
    "L_C": "#CC2200",
    "L_SH": "#E05500",
    "L_SV": "#B22222",
    "L_T": "#FF6347",
    "G_1": "#8B0000",
    "G_2": "#FF4500",
}


@dataclass
class SideCondition:
    poly: Jet
    relation: str  # one of "<=", "<", ">=", ">", "="

    def holds(self, point: dict) -> bool:
        v = self.poly.evaluate(point)
        return {"<=": v <= 0, "<": v < 0, ">=": v >= 0, ">": v > 0,
                "=": v == 0}[self.relation]

    def __str__(self) -> str:
        return "%s %s 0" % (self.poly, self.relation)


@dataclass
class Component:
    """One named transition-set component: a union of conjunctive polynomial
    systems in the unfolding parameters, with optional side conditions."""

    name: str
    systems: List[List[Jet]] = field(default_factory=list)
    side_conditions: List[SideCondition] = field(default_factory=list)
    note: Optional[str] = None  # "dense" when the projection fills space

    @property
    def is_empty(self) -> bool:
        return not self.systems and self.note != "dense"

    def polys(self) -> List[Jet]:
        return [p for system in self.systems for p in system]

    def vanishes_at(self, point: dict) -> bool:
        if self.note == "dense":
            return True
        return any(all(p.evaluate(point) == 0 for p in system)
                   for system in self.systems)

    def __str__(self) -> str:
        if self.is_empty:
            return "%s: empty" % self.name
        if self.note == "dense":
            return "%s: whole parameter space" % self.name
        parts = []
        for system in self.systems:
            conj = ", ".join("%s = 0" % p for p in system)
            parts.append("{%s}" % conj)
        txt = "%s: %s" % (self.name, " union ".join(parts))
        if self.side_conditions:
            txt += " with " + ", ".join(str(s) for s in self.side_conditions)
        return txt


@dataclass
class TransitionSet:
    components: Dict[str, Component]
    params: Tuple[str, ...]

    def all_polys(self) -> List[Tuple[str, Jet]]:
        out = []
        for name, comp in self.components.items():
            for p in comp.polys():
                out.append((name, p))
        return out

    def __str__(self) -> str:
        return "\n".join(str(self.components[n]) for n in self.components)


def _is_const(p: Jet) -> bool:
    return all(mdeg(m) == 0 for m in p.terms)


def _component_from_elimination(name: str, polys: List[Jet]) -> Component:
    if not polys:
        return Component(name, note="dense")
    if len(polys) == 1 and _is_const(polys[0]):
        return Component(name)  # empty variety
    return Component(name, systems=[polys])


def _normalize_jet(p: Jet) -> Jet:
    import sympy

    syms = [sympy.Symbol(n) for n in p.variables]
    expr = _normalize_poly(_jet_to_sympy(p, syms), syms)
    if expr.is_number:
        return Jet.constant(1, p.variables, None)
    return _sympy_to_jet(expr, p.variables)


def truncate_xlam(body: Jet, k: int) -> Jet:
    """Truncate the state-variable degree (x and lambda slots) at k, leaving
    the parameter slots alone."""
    terms = {m: c for m, c in body.terms.items() if m[0] + m[1] <= k}
    return Jet(terms, body.variables, None)


# ----------------------------------------------------------- interior sets


def _double_limit_system(body: Jet):
    """The double-limit-point equations rewritten in the symmetric functions
    s = x1 + x2 and m = x1 * x2 (the antisymmetric differences are divided
    exactly by x1 - x2, which removes the diagonal x1 = x2)."""
    import sympy
    from sympy.polys.polyfuncs import symmetrize

    variables = body.variables
    params = variables[2:]
    x1, x2 = sympy.symbols("x1 x2")
    lam = sympy.Symbol(variables[1])
    psyms = [sympy.Symbol(n) for n in params]
    s, m = sympy.symbols("s m")

    F = _jet_to_sympy(body, [sympy.Symbol(variables[0]), lam] + psyms)
    Fx = sympy.diff(F, sympy.Symbol(variables[0]))
    xsym = sympy.Symbol(variables[0])
    eqs = []
    for h in (F, Fx):
        h1 = h.subs(xsym, x1)
        h2 = h.subs(xsym, x2)
        eqs.append(sympy.expand(h1 + h2))
        eqs.append(sympy.expand(sympy.quo(sympy.expand(h1 - h2),
                                          x1 - x2, x1)))
    sym_eqs = []
    for e in eqs:
        symmetric, remainder, defs = symmetrize(e, [x1, x2], formal=True)
        if remainder != 0:
            raise ValueError("double-limit equation is not symmetric")
        # defs lists (s1, x1 + x2), (s2, x1*x2); rewrite in s and m
        subs = {}
        for sym, val in defs:
            subs[sym] = s if val == x1 + x2 else m
        sym_eqs.append(sympy.expand(symmetric.subs(subs)))
    names = ("s", "m", variables[1]) + params
    return [_sympy_to_jet(e, names) for e in sym_eqs], names


def _double_limit_witnesses(body: Jet, count: int = 20, seed: int = 11):
    """Parameter points on the double-limit set: sample x1 != x2 rational,
    solve {F(x1), F(x2), F_x(x1), F_x(x2)} for lambda and the parameters."""
    import sympy

    variables = body.variables
    params = variables[2:]
    syms = [sympy.Symbol(n) for n in variables]
    F = _jet_to_sympy(body, syms)
    Fx = sympy.diff(F, syms[0])
    unknowns = [syms[1]] + list(syms[2:])
    rng = random.Random(seed)
    out = []
    attempts = 0
    while len(out) < count and attempts < count * 15:
        attempts += 1
        x1 = sympy.Rational(rng.randint(-30, 30), rng.randint(1, 5))
        x2 = sympy.Rational(rng.randint(-30, 30), rng.randint(1, 5))
        if x1 == x2:
            continue
        system = [h.subs(syms[0], v) for h in (F, Fx) for v in (x1, x2)]
        try:
            sols = sympy.solve(system, unknowns, dict=True)
        except Exception:
            continue
        for sol in sols:
            if len(sol) != len(unknowns):
                continue
            if all(v.is_rational for v in sol.values()):
                out.append({n: sol[sympy.Symbol(n)] for n in params})
    return out


def _double_limit_branches(sym_eqs: List[Jet], params):
    """Branches of the symmetric double-limit system where (s, m, lambda) are
    radical-free rational functions of the parameters.  Solve triangularly:
    repeatedly pick an equation with a factor linear in a remaining unknown
    and branch over its factors; the equations left over once all unknowns
    are assigned become the branch's parameter constraints.  Branches with
    s^2 - 4m identically zero live on the diagonal x1 = x2 and are dropped."""
    import sympy

    names = sym_eqs[0].variables
    syms = {n: sympy.Symbol(n) for n in names}
    gens = [syms[n] for n in names]
    unknowns = [syms["s"], syms["m"], syms[names[2]]]
    psyms = [syms[n] for n in params]

    def clean(e):
        numer, _den = sympy.fraction(sympy.together(sympy.expand(e)))
        return sympy.expand(numer)

    eqs = [clean(_jet_to_sympy(e, gens)) for e in sym_eqs]
    branches = []
    seen = set()
    work = [({}, eqs)]
    rounds = 0
    while work and rounds < 200:
        rounds += 1
        assign, system = work.pop()
        system = [clean(e.subs(assign)) for e in system]
        if any(e.is_number and not e.is_zero for e in system):
            continue  # inconsistent branch
        system = [e for e in system if not e.is_zero]
        remaining = [u for u in unknowns if u not in assign]
        if not remaining:
            # back-substitute: earlier assignments may mention unknowns that
            # were only solved later
            resolved = dict(assign)
            for _ in range(len(unknowns)):
                resolved = {u: sympy.together(v.subs(resolved))
                            for u, v in resolved.items()}
            vals = [sympy.together(sympy.simplify(resolved[u]))
                    for u in unknowns]
            if any(v.free_symbols & set(unknowns) for v in vals):
                continue
            gate = sympy.simplify(vals[0] ** 2 - 4 * vals[1])
            if gate.is_zero:
                continue
            key = tuple(sympy.srepr(v) for v in vals)
            if key in seen:
                continue
            seen.add(key)
            constraints = [_normalize_poly(e, psyms) for e in system]
            if any(c.is_number and c != 0 for c in constraints):
                continue
            branches.append((vals, gate, constraints))
            continue
        # choose the simplest equation with a factor linear in a remaining
        # unknown
        chosen = None
        for e in sorted(system,
                        key=lambda q: sympy.total_degree(q, *unknowns)):
            _c, factors = sympy.factor_list(e)
            for base, _m in factors:
                for u in remaining:
                    if sympy.degree(base, u) == 1:
                        chosen = (e, factors)
                        break
                if chosen:
                    break
            if chosen:
                break
        if chosen is None:
            continue  # no rational continuation on this branch
        e, factors = chosen
        rest = [q for q in system if q is not e]
        for base, _m in factors:
            solved = False
            for u in remaining:
                if sympy.degree(base, u) != 1:
                    continue
                co1 = sympy.Poly(base, u).all_coeffs()
                if len(co1) != 2:
                    continue
                a, b = co1
                if a.is_zero:
                    continue
                new_assign = dict(assign)
                new_assign[u] = sympy.together(-b / a)
                work.append((new_assign, rest))
                solved = True
                break
            if not solved and not base.is_number:
                pass  # non-linear factor: no rational branch through it
    return branches


def _branch_witnesses(branch, params, count: int = 20, seed: int = 3):
    """Rational parameter points on one branch's constraint variety: solve
    the constraints for parameters they touch linearly, sampling the rest."""
    import sympy

    _vals, _gate, constraints = branch
    psyms = [sympy.Symbol(n) for n in params]
    rng = random.Random(seed)
    if not constraints:
        return []
    targets = []
    for c in constraints:
        pick = None
        for p in psyms:
            if p in targets:
                continue
            if sympy.degree(c, p) == 1:
                pick = p
                break
        if pick is None:
            return []
        targets.append(pick)
    free = [p for p in psyms if p not in targets]
    out = []
    attempts = 0
    while len(out) < count and attempts < count * 10:
        attempts += 1
        subs = {p: sympy.Rational(rng.randint(-20, 20), rng.randint(1, 5))
                for p in free}
        system = [c.subs(subs) for c in constraints]
        try:
            sols = sympy.solve(system, targets, dict=True)
        except Exception:
            continue
        for sol in sols:
            if len(sol) != len(targets):
                continue
            if not all(v.is_rational for v in sol.values()):
                continue
            point = dict(subs)
            point.update(sol)
            out.append({n: point[sympy.Symbol(n)] for n in params})
    return out


def _gate_condition(gate, params):
    """Render the realness requirement gate > 0 as a closed side condition on
    a sign-normalized polynomial."""
    import sympy

    psyms = [sympy.Symbol(n) for n in params]
    numer, denom = sympy.fraction(sympy.together(gate))
    poly = sympy.expand(numer * denom)  # gate > 0  <=>  poly > 0
    if poly.is_number or poly.is_zero:
        return None
    norm = _normalize_poly(poly, psyms)
    sample = {p: sympy.Rational(i + 2, 1) for i, p in enumerate(psyms)}
    g0, n0 = poly.subs(sample), norm.subs(sample)
    tries = 4
    while (g0 == 0 or n0 == 0) and tries:
        sample = {p: v + 1 for p, v in sample.items()}
        g0, n0 = poly.subs(sample), norm.subs(sample)
        tries -= 1
    if g0 == 0 or n0 == 0:
        return None
    same = (g0 > 0) == (n0 > 0)
    return SideCondition(_sympy_to_jet(norm, params), ">=" if same else "<=")


def transition_set(G: UnfoldingGerm, k: Optional[int] = None) -> TransitionSet:
    """The interior transition set: bifurcation B (fold meets G_lambda = 0),
    hysteresis H (degenerate fold), and double limit points D."""
    body = G.body if k is None else truncate_xlam(G.body, k)
    params = body.variables[2:]
    xn, ln = body.variables[0], body.variables[1]
    F = body
    Fx = body.diff(xn)
    Flam = body.diff(ln)
    Fxx = Fx.diff(xn)

    comps: Dict[str, Component] = {}
    comps["B"] = _component_from_elimination(
        "B", eliminate([F, Fx, Flam], [xn, ln]))
    comps["H"] = _component_from_elimination(
        "H", eliminate([F, Fx, Fxx], [xn, ln]))

    sym_eqs, _names = _double_limit_system(body)
    branches = _double_limit_branches(sym_eqs, params)
    witnesses = _double_limit_witnesses(body)
    if not witnesses and len(branches) == 1:
        witnesses = _branch_witnesses(branches[0], params)
    d_polys = eliminate(sym_eqs, ["s", "m", ln], witnesses=witnesses)
    comp_d = _component_from_elimination("D", d_polys)
    if not comp_d.is_empty and comp_d.note != "dense":
        import sympy

        psyms = [sympy.Symbol(n) for n in params]
        kept_exprs = [_jet_to_sympy(p, psyms) for p in comp_d.polys()]
        conditions = []
        for branch in branches:
            _vals, gate, constraints = branch
            # attach the realness condition only to branches whose constraint
            # actually cuts out one of the kept components
            relevant = not constraints or any(
                not sympy.gcd(c, kp).is_number
                for c in constraints for kp in kept_exprs)
            if not relevant:
                continue
            cond = _gate_condition(gate, params)
            if cond is not None:
                conditions.append(cond)
        seen = set()
        for c in conditions:
            key = (tuple(sorted(c.poly.terms.items())), c.relation)
            if key not in seen:
                seen.add(key)
                comp_d.side_conditions.append(c)
    comps["D"] = comp_d
    return TransitionSet(comps, params)


# ----------------------------------------------------------- boundary sets


def _subst_x(body: Jet, value: Fraction) -> Jet:
    """F with x fixed to a rational value; result in (lam, params)."""
    variables = body.variables
    out = {}
    for m, c in body.terms.items():
        key = m[1:]
        out[key] = out.get(key, Fraction(0)) + c * Fraction(value) ** m[0]
    return Jet(out, variables[1:], None)


def _subst_lam(body: Jet, value: Fraction) -> Jet:
    """F with lambda fixed; result in (x, params)."""
    variables = body.variables
    out = {}
    for m, c in body.terms.items():
        key = (m[0],) + m[2:]
        out[key] = out.get(key, Fraction(0)) + c * Fraction(value) ** m[1]
    return Jet(out, (variables[0],) + variables[2:], None)


def _subst_xlam(body: Jet, xv, lv) -> Jet:
    out = {}
    for m, c in body.terms.items():
        key = m[2:]
        val = c * Fraction(xv) ** m[0] * Fraction(lv) ** m[1]
        out[key] = out.get(key, Fraction(0)) + val
    return Jet(out, body.variables[2:], None)


def _groebner_eliminate(polys: List[Jet], drop: List[str]) -> List[Jet]:
    """Exact elimination ideal via a lex Groebner basis; used where the
    projection has codimension above one and iterated resultants would lose
    generators (the tangency family L_T)."""
    import sympy

    variables = polys[0].variables
    kept = [n for n in variables if n not in drop]
    syms = {n: sympy.Symbol(n) for n in variables}
    exprs = [_jet_to_sympy(p, [syms[n] for n in variables]) for p in polys]
    exprs = [e for e in exprs if not e.is_zero]
    if any(e.is_number for e in exprs):
        return [Jet.constant(1, tuple(kept), None)]
    gens = [syms[n] for n in drop] + [syms[n] for n in kept]
    basis = sympy.groebner(exprs, *gens, order="lex")
    out = []
    for e in basis.exprs:
        if not (e.free_symbols & {syms[n] for n in drop}):
            norm = _normalize_poly(e, [syms[n] for n in kept])
            if norm.is_number:
                return [Jet.constant(1, tuple(kept), None)]
            out.append(_sympy_to_jet(norm, kept))
    return out


def nonpersistent_sets(F: UnfoldingGerm, U, L, vertical: bool = False,
                       horizontal: bool = False,
                       k: Optional[int] = None) -> TransitionSet:
    """Transition set of F restricted to the box U x L: the interior sources
    L_B, L_H, G_D plus the boundary sources L_C, L_SH, L_SV, L_T, G_1, G_2.
    `vertical` keeps only the x-boundary families, `horizontal` only the
    lambda-boundary ones; interior components always remain."""
    body = F.body if k is None else truncate_xlam(F.body, k)
    params = body.variables[2:]
    xn, ln = body.variables[0], body.variables[1]
    u_lo, u_hi = Fraction(U[0]), Fraction(U[1])
    l_lo, l_hi = Fraction(L[0]), Fraction(L[1])
    fx = body.diff(xn)
    flam = body.diff(ln)

    want_x = not horizontal
    want_l = not vertical
    comps: Dict[str, Component] = {}

    if want_x and want_l:
        corner = Component("L_C")
        for xv in (u_lo, u_hi):
            for lv in (l_lo, l_hi):
                p = _normalize_jet(_subst_xlam(body, xv, lv))
                if not _is_const(p):
                    corner.systems.append([p])
        comps["L_C"] = corner

    if want_x:
        sh = Component("L_SH")
        for xv in (u_lo, u_hi):
            polys = eliminate([_subst_x(body, xv), _subst_x(fx, xv)], [ln])
            if polys and not (len(polys) == 1 and _is_const(polys[0])):
                sh.systems.append(polys)
        comps["L_SH"] = sh

        lt = Component("L_T")
        for xv in (u_lo, u_hi):
            polys = _groebner_eliminate(
                [_subst_x(body, xv), _subst_x(flam, xv)], [ln])
            if polys and not (len(polys) == 1 and _is_const(polys[0])):
                lt.systems.append(polys)
        comps["L_T"] = lt

    if want_l:
        sv = Component("L_SV")
        for lv in (l_lo, l_hi):
            polys = eliminate([_subst_lam(body, lv), _subst_lam(fx, lv)],
                              [xn])
            if polys and not (len(polys) == 1 and _is_const(polys[0])):
                sv.systems.append(polys)
        comps["L_SV"] = sv

    if want_x:
        g1 = Component("G_1")
        for xv in (u_lo, u_hi):
            boundary = _subst_x(body, xv).rename(body.variables)
            polys = eliminate([boundary, body, fx], [xn, ln])
            if polys and not (len(polys) == 1 and _is_const(polys[0])):
                g1.systems.append(polys)
        comps["G_1"] = g1

        b1 = _subst_x(body, u_lo)
        b2 = _subst_x(body, u_hi)
        g2_polys = eliminate([b1, b2], [ln])
        comps["G_2"] = _component_from_elimination("G_2", g2_polys)

    interior = transition_set(F, k)
    for inner, outer in (("B", "L_B"), ("H", "L_H"), ("D", "G_D")):
        comp = interior.components[inner]
        comps[outer] = Component(outer, systems=comp.systems,
                                 side_conditions=comp.side_conditions,
                                 note=comp.note)
    for comp in comps.values():
        deduped = []
        seen = set()
        for system in comp.systems:
            key = tuple(sorted(tuple(sorted(p.terms.items()))
                               for p in system))
            if key not in seen:
                seen.add(key)
                deduped.append(system)
        comp.systems = deduped
    return TransitionSet(comps, params)


# ------------------------------------------------------ region classification


@dataclass
class RegionCatalog:
    representatives: List[Tuple[tuple, tuple, str]]  # (point, signs, tag)
    box: List[Tuple[Fraction, Fraction]]
    grid_resolution: int
    warnings: List[str] = field(default_factory=list)


def _grid_points(box, n):
    axes = []
    for lo, hi in box:
        lo, hi = Fraction(lo), Fraction(hi)
        axes.append([lo + (hi - lo) * i / (n - 1) for i in range(n)]
                    if n > 1 else [(lo + hi) / 2])
    points = [()]
    for axis in axes:
        points = [p + (v,) for p in points for v in axis]
    return points


def classify_regions(sigma: TransitionSet, box=None, grid: int = 41,
                     granularity: str = "complete") -> RegionCatalog:
    """Pick persistent representatives off the transition set.  short: one
    point per sign of the product polynomial; intermediate: one per
    per-polynomial sign vector; complete: one per orthogonally connected
    component of same-sign grid points."""
    params = sigma.params
    p = len(params)
    if box is None:
        box = [(Fraction(-1), Fraction(1))] * p
    polys = [poly for _n, poly in sigma.all_polys()]
    warnings = []
    if not polys:
        center = tuple((Fraction(lo) + Fraction(hi)) / 2 for lo, hi in box)
        return RegionCatalog([(center, (), granularity)], box, grid, warnings)

    points = _grid_points(box, grid)
    signs = {}
    for pt in points:
        env = dict(zip(params, pt))
        vec = []
        ok = True
        for poly in polys:
            v = poly.evaluate(env)
            if v == 0:
                ok = False
                break
            vec.append(1 if v > 0 else -1)
        if ok:
            signs[pt] = tuple(vec)
    for i, poly in enumerate(polys):
        seen = {vec[i] for vec in signs.values()}
        if len(seen) == 1:
            warnings.append(
                "grid may be too coarse: %s keeps one sign on the grid"
                % poly)

    reps = []
    if granularity == "short":
        by_key = {}
        for pt in points:
            if pt in signs:
                key = 1
                for s in signs[pt]:
                    key *= s
                if key not in by_key:
                    by_key[key] = pt
        reps = [(pt, signs[pt], "short") for pt in by_key.values()]
    elif granularity == "intermediate":
        by_key = {}
        for pt in points:
            if pt in signs and signs[pt] not in by_key:
                by_key[signs[pt]] = pt
        reps = [(pt, signs[pt], "intermediate") for pt in by_key.values()]
    else:
        # flood fill over same-sign orthogonal neighbors
        steps = []
        for lo, hi in box:
            lo, hi = Fraction(lo), Fraction(hi)
            steps.append((hi - lo) / (grid - 1) if grid > 1 else Fraction(0))
        seen = set()
        for pt in points:
            if pt not in signs or pt in seen:
                continue
            stack = [pt]
            seen.add(pt)
            while stack:
                cur = stack.pop()
                for axis in range(p):
                    for direction in (-1, 1):
                        if steps[axis] == 0:
                            continue
                        nxt = tuple(
                            v + direction * steps[axis] if i == axis else v
                            for i, v in enumerate(cur))
                        if nxt in signs and nxt not in seen \
                                and signs[nxt] == signs[pt]:
                            seen.add(nxt)
                            stack.append(nxt)
            reps.append((pt, signs[pt], "complete"))
    reps.sort(key=lambda r: r[0])
    return RegionCatalog(reps, [(Fraction(lo), Fraction(hi))
                                for lo, hi in box], grid, warnings)


# ------------------------------------------------------------ diagrams


@dataclass
class Diagram:
    curves: List[List[Tuple[float, float]]]  # polylines of (lambda, x)
    window: Tuple[Tuple[float, float], Tuple[float, float]]
    germ_at: tuple


def _evaluator(body: Jet, params, alpha):
    """Float evaluator of G(x, lambda) at fixed parameter values."""
    env = dict(zip(params, alpha))
    terms = []
    for m, c in body.terms.items():
        scale = float(c)
        for name, e in zip(body.variables[2:], m[2:]):
            if e:
                scale *= float(Fraction(env[name])) ** e
        terms.append((m[0], m[1], scale))
    merged = {}
    for i, j, s in terms:
        merged[(i, j)] = merged.get((i, j), 0.0) + s
    items = [(i, j, s) for (i, j), s in merged.items() if s != 0.0]

    def g(x, lam):
        total = 0.0
        for i, j, s in items:
            total += s * (x ** i) * (lam ** j)
        return total

    return g


def _edge_root(g, p0, p1, v0, v1):
    """Bisect for the zero of g along the segment p0 -> p1 (values v0, v1 of
    opposite sign) until |g| <= TOL or the bracket is exhausted."""
    (l0, x0), (l1, x1) = p0, p1
    for _ in range(80):
        lm, xm = (l0 + l1) / 2.0, (x0 + x1) / 2.0
        vm = g(xm, lm)
        if abs(vm) <= TOL:
            return (lm, xm)
        if (vm > 0) == (v0 > 0):
            l0, x0, v0 = lm, xm, vm
        else:
            l1, x1, v1 = lm, xm, vm
    return ((l0 + l1) / 2.0, (x0 + x1) / 2.0)


def bifurcation_diagram(G: UnfoldingGerm, alpha: Sequence,
                        window=((-1.0, 1.0), (-1.0, 1.0)),
                        resolution: int = 400) -> Diagram:
    """Marching-squares trace of {G(x, lambda, alpha) = 0} in the
    (lambda, x) window, with per-vertex bisection polishing."""
    params = G.params
    g = _evaluator(G.body, params, alpha)
    (llo, lhi), (xlo, xhi) = window
    llo, lhi = float(llo), float(lhi)
    xlo, xhi = float(xlo), float(xhi)
    n = resolution
    dl = (lhi - llo) / n
    dx = (xhi - xlo) / n
    values = [[g(xlo + i * dx, llo + j * dl) for i in range(n + 1)]
              for j in range(n + 1)]

    def corner(j, i):
        return (llo + j * dl, xlo + i * dx)

    segments = []
    for j in range(n):
        for i in range(n):
            vs = [values[j][i], values[j + 1][i],
                  values[j + 1][i + 1], values[j][i + 1]]
            ps = [corner(j, i), corner(j + 1, i),
                  corner(j + 1, i + 1), corner(j, i + 1)]
            crossings = []
            for e in range(4):
                a, b = e, (e + 1) % 4
                va, vb = vs[a], vs[b]
                if va == 0.0:
                    crossings.append((e, ps[a]))
                elif (va > 0) != (vb > 0):
                    crossings.append((e, _edge_root(g, ps[a], ps[b], va, vb)))
            pts = [c[1] for c in crossings]
            if len(pts) == 2:
                segments.append((pts[0], pts[1]))
            elif len(pts) == 4:
                # saddle cell: split by the sign of the center value
                center = g((ps[0][1] + ps[2][1]) / 2,
                           (ps[0][0] + ps[2][0]) / 2)
                if (center > 0) == (vs[0] > 0):
                    segments.append((pts[0], pts[1]))
                    segments.append((pts[2], pts[3]))
                else:
                    segments.append((pts[1], pts[2]))
                    segments.append((pts[3], pts[0]))

    # chain segments into polylines by shared (rounded) endpoints
    def key(pt):
        return (round(pt[0], 9), round(pt[1], 9))

    adj = {}
    for a, b in segments:
        adj.setdefault(key(a), []).append((a, b))
        adj.setdefault(key(b), []).append((b, a))
    used = set()
    curves = []
    for idx, (a, b) in enumerate(segments):
        if idx in used:
            continue
        used.add(idx)
        path = [a, b]
        # extend forward
        for endidx in (1, 0):
            while True:
                end = path[-1] if endidx else path[0]
                nxt = None
                for cand, other in adj.get(key(end), []):
                    sidx = None
                    for si, seg in enumerate(segments):
                        if si in used:
                            continue
                        if (key(seg[0]) == key(end)
                                or key(seg[1]) == key(end)):
                            sidx = si
                            break
                    if sidx is not None:
                        seg = segments[sidx]
                        used.add(sidx)
                        nxt = seg[1] if key(seg[0]) == key(end) else seg[0]
                    break
                if nxt is None:
                    break
                if endidx:
                    path.append(nxt)
                else:
                    path.insert(0, nxt)
        curves.append(path)
    return Diagram(curves, ((llo, lhi), (xlo, xhi)),
                   tuple(Fraction(a) for a in alpha))


def root_count_signature(diagram: Diagram, lambdas: Sequence[float],
                         merge_tol: float = 1e-5) -> tuple:
    """Number of distinct x-roots read off the traced curves at each lambda
    sample."""
    counts = []
    for c in lambdas:
        xs = []
        for curve in diagram.curves:
            for (l0, x0), (l1, x1) in zip(curve, curve[1:]):
                if (l0 - c) * (l1 - c) <= 0 and l0 != l1:
                    t = (c - l0) / (l1 - l0)
                    if 0.0 <= t <= 1.0:
                        xs.append(x0 + t * (x1 - x0))
                elif l0 == l1 == c:
                    xs.extend([x0, x1])
        xs.sort()
        count = 0
        last = None
        for x in xs:
            if last is None or x - last > merge_tol:
                count += 1
            last = x
        counts.append(count)
    return tuple(counts)


def exact_root_counts(G: UnfoldingGerm, alpha, lambdas, xwindow) -> tuple:
    """Sturm-sequence real-root counts of the lambda-slice polynomials."""
    import sympy

    x = sympy.Symbol("x")
    lam = sympy.Symbol("lam")
    body = G.body
    psyms = [sympy.Symbol(n) for n in G.params]
    expr = _jet_to_sympy(body, [x, lam] + psyms)
    expr = expr.subs({s: sympy.Rational(Fraction(a))
                      for s, a in zip(psyms, alpha)})
    lo, hi = sympy.Rational(Fraction(xwindow[0])), \
        sympy.Rational(Fraction(xwindow[1]))
    counts = []
    for c in lambdas:
        slice_poly = sympy.Poly(expr.subs(lam, sympy.Rational(Fraction(c))),
                                x)
        counts.append(slice_poly.count_roots(lo, hi))
    return tuple(counts)


# -------------------------------------------------------------- rendering


_SVG_SIZE = 480


def _svg_header():
    return ('<?xml version="1.0" encoding="UTF-8"?>\n'
            '<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d" '
            'viewBox="0 0 %d %d">\n' % (_SVG_SIZE, _SVG_SIZE,
                                        _SVG_SIZE, _SVG_SIZE))


def _svg_axes(window):
    (hlo, hhi), (vlo, vhi) = window
    parts = []
    if hlo < 0 < hhi:
        px = _SVG_SIZE * (0 - hlo) / (hhi - hlo)
        parts.append('<line x1="%.2f" y1="0" x2="%.2f" y2="%d" '
                     'stroke="#CCCCCC" stroke-width="1"/>\n'
                     % (px, px, _SVG_SIZE))
    if vlo < 0 < vhi:
        py = _SVG_SIZE * (1 - (0 - vlo) / (vhi - vlo))
        parts.append('<line x1="0" y1="%.2f" x2="%d" y2="%.2f" '
                     'stroke="#CCCCCC" stroke-width="1"/>\n'
                     % (py, _SVG_SIZE, py))
    return "".join(parts)


def _svg_path(points, window, color):
    (hlo, hhi), (vlo, vhi) = window
    coords = []
    for h, v in points:
        px = _SVG_SIZE * (h - hlo) / (hhi - hlo)
        py = _SVG_SIZE * (1 - (v - vlo) / (vhi - vlo))
        coords.append("%.3f,%.3f" % (px, py))
    return ('<polyline fill="none" stroke="%s" stroke-width="1.5" '
            'points="%s"/>\n' % (color, " ".join(coords)))


def render_diagram(diagram: Diagram, path: str) -> List[str]:
    """Write the diagram as SVG plus a CSV of polyline vertices."""
    svg = [_svg_header(), _svg_axes(diagram.window)]
    for curve in diagram.curves:
        svg.append(_svg_path(curve, diagram.window, "#000000"))
    svg.append("</svg>\n")
    base = path[:-4] if path.endswith(".svg") else path
    svg_path = base + ".svg"
    csv_path = base + ".csv"
    with open(svg_path, "w") as fh:
        fh.write("".join(svg))
    with open(csv_path, "w") as fh:
        fh.write("curve_id,lambda,x\n")
        for cid, curve in enumerate(diagram.curves):
            for lam, x in curve:
                fh.write("%d,%.12g,%.12g\n" % (cid, lam, x))
    return [svg_path, csv_path]


def _trace_poly_2d(poly: Jet, free_names, fixed: dict, box, resolution=200):
    """Marching-squares polylines of {poly = 0} in the plane of two free
    parameters, other parameters fixed."""
    params = poly.variables
    i0 = params.index(free_names[0])
    i1 = params.index(free_names[1])
    consts = {n: float(Fraction(v)) for n, v in fixed.items()}

    items = []
    for m, c in poly.terms.items():
        scale = float(c)
        skip = False
        for idx, name in enumerate(params):
            e = m[idx]
            if not e:
                continue
            if name == free_names[0] or name == free_names[1]:
                continue
            if name in consts:
                scale *= consts[name] ** e
            else:
                skip = True
                break
        if not skip:
            items.append((m[i0], m[i1], scale))

    def g(b, a):
        # evaluator signature matches bifurcation_diagram's (x, lam) order:
        # first argument varies vertically, second horizontally
        total = 0.0
        for e0, e1, s in items:
            total += s * (a ** e0) * (b ** e1)
        return total

    class _Wrapper:
        body = None

    (alo, ahi), (blo, bhi) = box
    dummy = Diagram([], box, ())
    # reuse the marching-squares core through a tiny local copy
    n = resolution
    da = (float(ahi) - float(alo)) / n
    db = (float(bhi) - float(blo)) / n
    values = [[g(float(blo) + i * db, float(alo) + j * da)
               for i in range(n + 1)] for j in range(n + 1)]

    def corner(j, i):
        return (float(alo) + j * da, float(blo) + i * db)

    segments = []
    for j in range(n):
        for i in range(n):
            vs = [values[j][i], values[j + 1][i],
                  values[j + 1][i + 1], values[j][i + 1]]
            ps = [corner(j, i), corner(j + 1, i),
                  corner(j + 1, i + 1), corner(j, i + 1)]
            pts = []
            for e in range(4):
                a, b = e, (e + 1) % 4
                va, vb = vs[a], vs[b]
                if va == 0.0:
                    pts.append(ps[a])
                elif (va > 0) != (vb > 0):
                    pts.append(_edge_root(g, ps[a], ps[b], va, vb))
            if len(pts) >= 2:
                segments.append((pts[0], pts[1]))
            if len(pts) == 4:
                segments.append((pts[2], pts[3]))
    return [[seg[0], seg[1]] for seg in segments]


def render_transition_slice(sigma: TransitionSet, path: str,
                            free: Optional[Tuple[str, str]] = None,
                            fixed: Optional[dict] = None,
                            box=((-1, 1), (-1, 1)),
                            resolution: int = 200) -> List[str]:
    """SVG of a two-parameter slice of the transition set (components in
    their documented colors) plus a CSV of curve vertices."""
    params = sigma.params
    fixed = dict(fixed or {})
    if free is None:
        free = tuple(n for n in params if n not in fixed)[:2]
    if len(free) != 2:
        raise ValueError("transition-set plots need exactly 2 free "
                         "parameters")
    for n in params:
        if n not in free and n not in fixed:
            fixed[n] = 0

    window = ((float(Fraction(box[0][0])), float(Fraction(box[0][1]))),
              (float(Fraction(box[1][0])), float(Fraction(box[1][1]))))
    svg = [_svg_header(), _svg_axes(window)]
    rows = []
    for name, comp in sigma.components.items():
        color = COLORS.get(name, "#444444")
        for poly in comp.polys():
            for curve in _trace_poly_2d(poly, free, fixed, box, resolution):
                svg.append(_svg_path(curve, window, color))
                for a, b in curve:
                    point = dict(fixed)
                    point[free[0]] = a
                    point[free[1]] = b
                    rows.append((name, [point[n] for n in params]))
    svg.append("</svg>\n")
    base = path[:-4] if path.endswith(".svg") else path
    svg_path = base + ".svg"
    csv_path = base + ".csv"
    with open(svg_path, "w") as fh:
        fh.write("".join(svg))
    with open(csv_path, "w") as fh:
        fh.write("component," + ",".join(params) + "\n")
        for name, vals in rows:
            fh.write(name + "," + ",".join("%.12g" % float(v)
                                           for v in vals) + "\n")
    return [svg_path, csv_path]


def render_frames(sigma: TransitionSet, out_dir: str, sweep: str,
                  values: Sequence, free: Tuple[str, str],
                  box=((-1, 1), (-1, 1)), resolution: int = 120) -> List[str]:
    """One SVG frame per swept parameter value plus an index file."""
    import os

    os.makedirs(out_dir, exist_ok=True)
    written = []
    index_lines = []
    for i, v in enumerate(values):
        name = "frame_%04d.svg" % i
        target = os.path.join(out_dir, name)
        render_transition_slice(sigma, target, free=free, fixed={sweep: v},
                                box=box, resolution=resolution)
        written.append(target)
        index_lines.append("%s %s" % (name, v))
    index = os.path.join(out_dir, "index.txt")
    with open(index, "w") as fh:
        fh.write("\n".join(index_lines) + "\n")
    written.append(index)
    return written


def persistent_truncation_degree(F: UnfoldingGerm, upper_bound: int = 12,
                                 start: int = 2) -> Optional[int]:
    """Least state-variable truncation degree from which the transition-set
    polynomials stop changing (compared against degree k + 1)."""

    def polys_at(k):
        ts = transition_set(F, k)
        return {name: sorted(tuple(sorted(p.terms.items()))
                             for p in comp.polys())
                for name, comp in ts.components.items()}

    prev = None
    prev_k = None
    for k in range(start, upper_bound + 1):
        cur = polys_at(k)
        if prev is not None and cur == prev:
            return prev_k
        prev = cur
        prev_k = k
    return None
