"""Mora division, standard bases, and the derived ideal operations."""

import random
from fractions import Fraction

import pytest

from germforge.germexpr import parse_and_expand
from germforge.jets import Jet, LexOrder, LocalOrder, monomials_upto
from germforge.localalg import (
    buchberger,
    codimension,
    colon_ideal,
    eliminate,
    ideal_intersection,
    ideal_membership,
    ideal_span,
    jet_vector,
    mora_divide,
    mult_matrix,
    normal_set,
    standard_basis,
)

V = ("x", "lam")
LO = LocalOrder()


def j(text, k=None):
    return parse_and_expand(text, V, k)


def random_jet(rng, max_terms=4, max_exp=3, k=6):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        m = (rng.randint(0, max_exp), rng.randint(0, max_exp))
        terms[m] = Fraction(rng.randint(-6, 6), rng.randint(1, 3))
    f = Jet(terms, V, k)
    return f


# ---------------------------------------------------------------- division

def test_division_example_remainder_minus_one():
    k = 8
    g = j("sin(x^7) - 1", k)
    G = [
        j("x^5 + x^6*exp(lam)", k),
        j("x*lam^3 - 2/7*x*lam^6 - x^7", k),
        j("lam*cos(x^7)", k),
    ]
    res = mora_divide(g, G, LO, k)
    assert res.remainder == Jet.constant(-1, V, k)
    assert res.check(g, G)


def test_division_trivials():
    res = mora_divide(j("x", 4), [j("x", 4)], LO, 4)
    assert res.remainder.is_zero()
    assert res.quotients[0] == Jet.constant(1, V, 4)
    res = mora_divide(j("lam^2", 4), [j("x", 4)], LO, 4)
    assert res.remainder == j("lam^2", 4)
    assert res.quotients[0].is_zero()


def test_division_identity_randomized():
    rng = random.Random(20240817)
    checked = 0
    while checked < 200:
        k = rng.randint(3, 7)
        g = random_jet(rng, k=k)
        G = [random_jet(rng, k=k) for _ in range(rng.randint(1, 3))]
        G = [f for f in G if not f.is_zero()]
        if g.is_zero() or not G:
            continue
        res = mora_divide(g, G, LO, k)
        assert res.check(g, G)
        assert res.unit.constant_term() != 0
        leads = [f.truncate(k).leading_monomial(LO) for f in G
                 if not f.truncate(k).is_zero()]
        from germforge.jets import mdivides

        for m in res.remainder.terms:
            assert not any(mdivides(lm, m) for lm in leads)
        checked += 1


# ---------------------------------------------------------- standard bases

def ideals_equal(A, B, k):
    sa = ideal_span(A, k)
    sb = ideal_span(B, k)
    return (sa.rank == sb.rank
            and all(sa.contains(jet_vector(f, k)) for f in B)
            and all(sb.contains(jet_vector(f, k)) for f in A))


def test_standard_basis_example():
    k = 7
    G = [
        j("x^5 + x^2*sin(lam + x) + lam^2", k),
        j("x^3*lam^2 + cos(lam)*x", k),
        j("lam^6 + x^4 - lam*x", k),
    ]
    sb = standard_basis(G, LO, k)
    out = sorted(str(f) for f in sb.generators)
    assert out == ["lam^2", "x"]
    assert ideals_equal(G, sb.generators, k)


def test_standard_basis_trivials():
    sb = standard_basis([j("x", 5)], LO, 5)
    assert [str(f) for f in sb.generators] == ["x"]
    G = [j("x^2 + lam^3", 6), j("lam^2", 6)]
    sb = standard_basis(G, LO, 6)
    assert sorted(str(f) for f in sb.generators) == ["lam^2", "x^2"]
    assert ideals_equal(G, sb.generators, 6)


def test_standard_basis_inputs_reduce_to_zero():
    rng = random.Random(11)
    for _ in range(15):
        k = rng.randint(4, 6)
        G = [random_jet(rng, k=k) for _ in range(2)]
        G = [f for f in G if not f.is_zero()]
        if not G:
            continue
        sb = standard_basis(G, LO, k)
        for f in G:
            assert sb.contains(f)
        assert ideals_equal(G, sb.generators, k)


def test_buchberger_lex():
    G = [j("x^2 - 1"), j("x*lam - 1")]
    gb = buchberger(G, LexOrder())
    assert set(gb) == {j("lam^2 - 1"), j("x - lam")}
    assert buchberger([j("x")], LexOrder()) == [j("x")]
    assert set(buchberger([j("x - lam"), j("lam")], LexOrder())) == {j("lam"), j("x")}


# ------------------------------------------------------------- membership

def test_membership_examples():
    sb = standard_basis([j("x", 8), j("lam^2", 8)], LO, 8)
    assert ideal_membership(j("x^7", 8), sb)
    assert not ideal_membership(j("lam", 8), sb)
    f = j("x^3*lam^2 + cos(lam)*x", 7)
    sb2 = standard_basis([f, j("lam^6 + x^4 - lam*x", 7)], LO, 7)
    assert ideal_membership(f, sb2)


def test_membership_agrees_with_span_oracle():
    rng = random.Random(77)
    agreements = 0
    while agreements < 50:
        k = rng.randint(3, 8)
        G = [random_jet(rng, max_exp=3, k=k) for _ in range(rng.randint(1, 3))]
        G = [f for f in G if not f.is_zero()]
        if not G:
            continue
        sb = standard_basis(G, LO, k, check_stability=False)
        f = random_jet(rng, k=k)
        span = ideal_span(G, k)
        expected = span.contains(jet_vector(f, k))
        got = f.truncate(k).is_zero() or ideal_membership(f, sb)
        assert got == expected
        agreements += 1


# ------------------------------------------------- intersection and colon

def test_intersection_trivials():
    out = ideal_intersection([j("x")], [j("lam")], None)
    assert [str(f) for f in out] == ["x*lam"]
    out = ideal_intersection([j("x"), j("lam")], [j("x")], None)
    assert [str(f) for f in out] == ["x"]


def test_intersection_against_span_oracle():
    k = 8
    I = [j("x^2", k)]
    J2 = [j("x^3 - lam", k)]
    out = ideal_intersection([j("x^2")], [j("x^3 - lam")], k)
    # brute-force intersection of the two coefficient spans
    si = ideal_span(I, k)
    sj = ideal_span(J2, k)
    monos = monomials_upto(2, k)
    from germforge.linalg import RowSpace, nullspace

    stacked = [list(r) + list(r) for r in si.rows]
    stacked += [[Fraction(0)] * len(monos) + list(r) for r in sj.rows]
    # vectors v in both spans: v = A^T a = B^T b; solve [A^T | -B^T] null space
    matA = [list(r) for r in si.rows]
    matB = [list(r) for r in sj.rows]
    cols = len(monos)
    rowsAB = []
    for c in range(cols):
        rowsAB.append([r[c] for r in matA] + [-r[c] for r in matB])
    both = RowSpace(cols)
    for vec in nullspace(rowsAB):
        a = vec[: len(matA)]
        v = [sum(ai * r[c] for ai, r in zip(a, matA)) for c in range(cols)]
        if any(x != 0 for x in v):
            both.add(v)
    sout = ideal_span(out, k)
    assert sout.rank == both.rank
    for f in out:
        assert both.contains(jet_vector(f, k))


def test_colon_example_ideal_equality():
    I = [
        j("x^7 + lam*x^3 - lam^2*x"),
        j("lam*x^6 + lam^2*x^2 - lam^3"),
        j("x^3*lam + x"),
    ]
    out = colon_ideal(I, j("lam"))
    printed = [
        j("x*(lam*x^2 + 1)"),
        j("lam^2*x^2 - x^4 - lam^3"),
        j("lam^4 + lam^2 - x^2"),
        j("x*(x^4 + lam^3 + lam)"),
    ]
    k = 8
    assert ideals_equal(out, printed, k)
    # each output generator f satisfies f*g in I
    sb = standard_basis(I, LO, k)
    for f in out:
        assert ideal_membership((f * j("lam")).truncate(k), sb)


def test_colon_trivials():
    assert [str(f) for f in colon_ideal([j("x*lam")], j("x"))] == ["lam"]
    assert [str(f) for f in colon_ideal([j("x^2")], j("1"))] == ["x^2"]


# --------------------------------------------------- normal sets, codim

NS_EXAMPLE = [
    "x^6 + lam*x^4 + lam^2*x",
    "lam*x^5 + lam^2*x^3 + lam^3",
    "5*x^6 + 3*lam*x^4",
    "5*lam*x^4 + 3*lam^2*x^2",
    "-3*x^7 - 3*lam*x^5 - 25/3*x^6",
]


def test_normal_set_example():
    ns = normal_set([j(s) for s in NS_EXAMPLE])
    printed = {
        (0, 0), (0, 1), (1, 0), (0, 2), (2, 0), (3, 0), (4, 0), (5, 0),
        (1, 1), (3, 1), (2, 1),
    }
    assert set(ns) == printed
    assert len(ns) == 11
    assert codimension([j(s) for s in NS_EXAMPLE]) == 11


def test_normal_set_trivials():
    assert normal_set([j("x"), j("lam")]) == [(0, 0)]
    assert set(normal_set([j("x^2"), j("lam")])) == {(0, 0), (1, 0)}


def test_normal_set_starts_at_one_descending_order():
    ns = normal_set([j(s) for s in NS_EXAMPLE])
    assert ns[0] == (0, 0)
    keys = [LO.key(m) for m in ns]
    assert keys == sorted(keys, reverse=True)


def test_codimension_values():
    assert codimension([j("x"), j("lam^2")]) == 2
    assert codimension([j("x^2")]) is None
    # normal set size equals jet dimension minus span rank
    k = 8
    G = [j(s, k) for s in NS_EXAMPLE]
    span = ideal_span(G, k)
    assert len(normal_set(G, k)) == len(monomials_upto(2, k)) - span.rank


# -------------------------------------------------------------- mult matrix

def test_mult_matrix_example():
    k = 6
    A = [
        j("x^6 + 12/27*x^10*lam^9", k),
        j("5/3*x^5 + lam*sin(x^3)", k),
        j("lam^2 - 2/3*(1 - exp(x^5))", k),
    ]
    M, basis = mult_matrix(A, (1, 0), k)
    assert basis[0] == (0, 0)
    n = len(basis)
    assert n == 9
    # multiplication by x maps basis monomial m to x*m when that is again a
    # basis monomial; the only correction term is -5/3 from lam*x^3
    index = {m: i for i, m in enumerate(basis)}
    for jcol, m in enumerate(basis):
        target = (m[0] + 1, m[1])
        col = [M[i][jcol] for i in range(n)]
        if target in index:
            expected = [Fraction(0)] * n
            expected[index[target]] = Fraction(1)
            assert col == expected
    # the x^2*lam column reduces: x^3*lam = -5/3*x^5 mod the ideal
    col = [M[i][index[(2, 1)]] for i in range(n)]
    expected = [Fraction(0)] * n
    expected[index[(5, 0)]] = Fraction(-5, 3)
    assert col == expected


def test_mult_matrix_trivial_and_commutation():
    M, basis = mult_matrix([j("x", 4), j("lam", 4)], (1, 0), 4)
    assert M == [[Fraction(0)]]
    A = [j("x^3", 6), j("lam^2", 6)]
    Mx, _ = mult_matrix(A, (1, 0), 6)
    Ml, _ = mult_matrix(A, (0, 1), 6)
    def matmul(P, Q):
        n = len(P)
        return [[sum(P[i][t] * Q[t][c] for t in range(n)) for c in range(n)]
                for i in range(n)]
    assert matmul(Mx, Ml) == matmul(Ml, Mx)
    Mxl, _ = mult_matrix(A, (1, 1), 6)
    assert matmul(Mx, Ml) == Mxl


# -------------------------------------------------------------- eliminate

WINGED = ("x", "lam", "a1", "a2", "a3")


def w(text):
    return parse_and_expand(text, WINGED, None)


def test_eliminate_fold_example():
    G = w("x^4 - lam*x + a1 + a2*lam + a3*x^2")
    Gx = w("4*x^3 - lam + 2*a3*x")
    Gl = w("-x + a2")
    out = eliminate([G, Gx, Gl], ["x", "lam"])
    assert [str(f) for f in out] == ["a1 + a2^2*a3 + a2^4"]


def test_eliminate_hysteresis_example():
    G = w("x^4 - lam*x + a1 + a2*lam + a3*x^2")
    Gx = w("4*x^3 - lam + 2*a3*x")
    Gxx = w("12*x^2 + 2*a3")
    out = eliminate([G, Gx, Gxx], ["x", "lam"])
    assert [str(f) for f in out] == \
        ["432*a1^2 + 72*a1*a3^2 + 3*a3^4 + 128*a2^2*a3^3"]


def test_eliminate_dense_projection():
    out = eliminate([parse_and_expand("x - a1", ("x", "a1"), None)], ["x"])
    assert out == []


def test_eliminate_output_vanishes_on_witnesses():
    import sympy

    G = w("x^4 - lam*x + a1 + a2*lam + a3*x^2")
    Gx = w("4*x^3 - lam + 2*a3*x")
    Gl = w("-x + a2")
    out = eliminate([G, Gx, Gl], ["x", "lam"])
    p = out[0]
    rng = random.Random(5)
    count = 0
    while count < 50:
        xv = Fraction(rng.randint(-30, 30), rng.randint(1, 5))
        lv = Fraction(rng.randint(-30, 30), rng.randint(1, 5))
        # solve the linear system for (a1, a2, a3): a2 = x, then the rest
        a2 = xv
        a3 = Fraction(lv - 4 * xv ** 3, 2 * xv) if xv != 0 else None
        if a3 is None:
            continue
        a1 = -(xv ** 4) + lv * xv - a2 * lv - a3 * xv ** 2
        val = p.evaluate({"a1": a1, "a2": a2, "a3": a3})
        assert val == 0
        count += 1
