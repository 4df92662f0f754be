"""Tangent spaces, normal forms, unfoldings, recognition, transformations."""

from fractions import Fraction

import pytest

from germforge.germexpr import parse_and_expand
from germforge.intrinsic import IntrinsicIdeal
from germforge.jets import Jet, monomials_upto
from germforge.linalg import RowSpace
from germforge.localalg import ideal_span, jet_vector
from germforge.singularity import (
    NF_POLY_WARNING,
    UNFOLDING_POLY_WARNING,
    NotEquivalentError,
    alg_objects,
    check_universal,
    equivalent,
    intrinsic_gens,
    make_unfolding,
    normal_form,
    recognition_matrix_value,
    recognition_normal_form,
    recognition_unfolding,
    restricted_tangent,
    s_perp,
    tangent_perp,
    tangent_space,
    transformation,
    universal_unfolding,
)

V = ("x", "lam")


def j(text, k=None):
    return parse_and_expand(text, V, k)


def unit_vec(m, monos, index):
    vec = [Fraction(0)] * len(monos)
    vec[index[m]] = Fraction(1)
    return vec


def span_of(intrinsic_blocks, extra_jets, extra_ideal_gens, k):
    """Brute-force span: intrinsic monomials + plain vectors + full ideal
    closure of further generators."""
    monos = monomials_upto(2, k)
    index = {m: i for i, m in enumerate(monos)}
    space = RowSpace(len(monos))
    ideal = IntrinsicIdeal.from_blocks(intrinsic_blocks)
    for m in monos:
        if ideal.contains_monomial(m):
            space.add(unit_vec(m, monos, index))
    for f in extra_jets:
        space.add(jet_vector(f.truncate(k), k, index))
    if extra_ideal_gens:
        closure = ideal_span([f.truncate(k) for f in extra_ideal_gens], k)
        for row in closure.rows:
            space.add(list(row))
    return space


def spaces_equal(a, b):
    if a.rank != b.rank:
        return False
    return all(b.contains(list(r)) for r in a.rows)


QUINTIC = "x^5 + x^3*lam^2 + lam^3"


def test_alg_objects_tower():
    g = j(QUINTIC, 6)
    ao = alg_objects(g, 6)
    assert ao.p.blocks == ((6, 0), (1, 3))
    assert ao.s.blocks == ((5, 0), (0, 3))
    assert ao.intrinsic_generators == [(5, 0), (0, 3)]
    expected_et = {(0, 0), (0, 1), (1, 0), (0, 2), (2, 0), (3, 0),
                   (2, 1), (1, 2), (2, 2), (1, 1)}
    assert set(ao.e_over_t) == expected_et
    expected_sperp = expected_et | {(4, 0), (3, 1)}
    assert set(ao.s_perp) == expected_sperp
    assert len(ao.e_over_t) == 10
    assert len(ao.s_perp) == 12


def test_rt_matches_printed_span():
    g = j(QUINTIC, 6)
    rt = restricted_tangent(g, 6)
    assert rt.intrinsic.blocks == ((6, 0), (1, 3))
    printed = span_of(
        [(6, 0), (1, 3)], [],
        [j("x^4*lam"), j("3*lam^2*x^3 + 5*x^5"), j("lam^2*x^3 + x^5 + lam^3")],
        6)
    assert spaces_equal(rt.space(), printed)


def test_t_matches_printed_span():
    g = j(QUINTIC, 6)
    t = tangent_space(g, 6)
    assert t.intrinsic.blocks == ((5, 0), (0, 3))
    printed = span_of(
        [(5, 0), (0, 3)],
        [j("3/5*lam^2*x^2 + x^4"), j("x^3*lam + 3/2*lam^2")],
        [], 6)
    assert spaces_equal(t.space(), printed)


def test_tangent_perp_codim_20():
    g = j("x^8 + sin(lam^3)", 9)
    tp = tangent_perp(g, 9)
    expected = ({(a, 0) for a in range(7)} | {(a, 1) for a in range(7)}
                | {(a, 2) for a in range(1, 7)})
    assert set(tp) == expected
    assert len(tp) == 20


def test_tangent_perp_cubic():
    g = j("x^3 + lam^2", 4)
    assert set(tangent_perp(g, 4)) == {(0, 0), (1, 0), (1, 1)}


def test_intrinsic_gens_codim_13():
    g = j("lam*x^8 + x^7 - lam^3*x^2 - lam^2*x")
    assert intrinsic_gens(g) == [(7, 0), (1, 2)]


def test_normal_forms():
    cases = [
        ("x^3 - sin(lam)", "x^3 - lam"),
        ("1 - 1/(1 + x^4 - lam^2)", "x^4 - lam^2"),
        ("x^5 + x^3*lam + sin(lam^2)", "x^5 + x^3*lam + lam^2"),
    ]
    for text, expected in cases:
        nf = normal_form(lambda k, t=text: j(t, k))
        assert nf.germ == j(expected, nf.degree)
        assert nf.warnings == []


def test_normal_form_scaling():
    nf = normal_form(lambda k: j("x^4 + 4*x^3 - lam*x", k))
    assert nf.germ == j("x^3 - x*lam", nf.degree)


def test_normal_form_polynomial_ring_warning():
    nf = normal_form(lambda k: j("x^5 + x^3*lam + sin(lam^2)", k),
                     ring="polynomial")
    assert NF_POLY_WARNING in nf.warnings
    # the computed germ itself is unchanged
    assert nf.germ == j("x^5 + x^3*lam + lam^2", nf.degree)


def test_universal_unfolding_list():
    results, warns = universal_unfolding(lambda k: j("x^3 - x*lam", k),
                                         want_list=True)
    assert warns == []
    rendered = {str(u) for u in results}
    assert rendered == {
        "a1 - x*lam + lam*a2 + x^3",
        "a1 - x*lam + x^3 + x^2*a2",
    }
    for u in results:
        assert check_universal(u) == "Yes"


def test_universal_unfolding_main_and_warning():
    main, warns = universal_unfolding(lambda k: j("x^3 - x*lam", k))
    assert warns == []
    assert check_universal(main) == "Yes"
    _main, warns2 = universal_unfolding(lambda k: j("x^3 - x*lam", k),
                                        ring="polynomial")
    assert UNFOLDING_POLY_WARNING in warns2


def test_check_universal_quintic():
    G = make_unfolding(j("x^5 - lam"), [j("x"), j("x^2"), j("x^3")])
    assert check_universal(G) == "Yes"
    bad = make_unfolding(j("x^5 - lam"), [j("x"), j("2*x"), j("x^3")])
    assert check_universal(bad) == "No"
    short = make_unfolding(j("x^5 - lam"), [j("x"), j("x^2")])
    assert check_universal(short) == "No"


def test_recognition_conditions():
    rc = recognition_normal_form(j("x^3 + sin(lam)", 4))
    assert rc.zero == [(0, 0), (1, 0), (2, 0)]
    assert rc.nonzero == [(0, 1), (3, 0)]
    text = rc.render()
    assert "f_{x,x}(0)=0" in text
    assert "f_{x,x,x}(0)!=0" in text
    assert "f_{lambda}(0)!=0" in text


def test_recognition_matrix_pattern():
    g = j("x^3 + exp(lam^2) - 1", 4)
    M = recognition_unfolding(g, 3, 4)
    assert M.columns == [(0, 0), (0, 1), (1, 0), (2, 0), (1, 1)]
    assert M.germ_rows == [("g_x", (0, 0)), ("g_lambda", (0, 0))]
    rows = M.render()
    assert rows[0] == ["0", "0", "0", "g_{x,x,x}(0)", "g_{x,x,lambda}(0)"]
    assert rows[1] == ["0", "g_{lambda,lambda}(0)", "0",
                       "g_{x,x,lambda}(0)", "g_{x,lambda,lambda}(0)"]
    assert all(e.startswith("G_{") for e in rows[2])


def test_recognition_matrix_determinant():
    g = j("x^3 + exp(lam^2) - 1", 4)
    M = recognition_unfolding(g, 3, 4)
    base = j("x^3 + lam^2", 4)
    good = make_unfolding(base, [j("1"), j("x"), j("x*lam")])
    bad = make_unfolding(base, [j("1"), j("x"), j("2*x")])
    assert recognition_matrix_value(M, base, good) != 0
    assert recognition_matrix_value(M, base, bad) == 0


def test_transformation_cubic_example():
    g = j("x^3 + sin(lam) + exp(x^5) - 1", 4)
    f = j("x^3 + lam", 4)
    tr = transformation(g, f, 4)
    res = tr.residual(g, f)
    assert all(sum(m) >= 4 for m in res.terms)
    assert tr.S.constant_term() > 0
    assert tr.X.terms[(1, 0)] > 0
    assert tr.L.terms[(0, 1)] > 0


def test_transformation_printed_triple_passes_residual():
    g = j("x^3 + sin(lam) + exp(x^5) - 1", 4)
    f = j("x^3 + lam", 4)
    X = j("x + lam + x*lam + lam^2", 4)
    L = j("lam", 4)
    S = j("1 - 3*x^2 - 3*x*lam - 5/6*lam^2 - 3*x^3 - 9*lam*x^2"
          " - 9*x*lam^2 - 3*lam^3", 4)
    res = f - S * g.compose({"x": X, "lam": L})
    assert all(sum(m) >= 4 for m in res.terms)


def test_transformation_infeasible():
    with pytest.raises(NotEquivalentError):
        transformation(j("x^2 - lam", 3), j("x^2 + lam", 3), 3)
    assert not equivalent(j("x^2 - lam", 3), j("x^2 + lam", 3), 3)


def test_transformation_scaling():
    g, f = j("x^2 - lam", 4), j("2*x^2 - 3*lam", 4)
    tr = transformation(g, f, 4)
    assert tr.residual(g, f).is_zero()
    assert tr.S.constant_term() > 0 and tr.L.terms[(0, 1)] > 0


def test_transformation_random_roundtrips():
    # applying a known transformation and solving back must succeed
    import random

    rng = random.Random(5)
    base_texts = ["x^3 - lam", "x^2 - lam", "x^3 - x*lam"]
    for text in base_texts:
        for _ in range(4):
            k = 5
            g = j(text, k)
            s = Fraction(rng.randint(1, 3))
            S = (Jet.constant(s, V, k)
                 + Jet.monomial((0, 1), V, Fraction(rng.randint(-2, 2), 6), k))
            X = (Jet.variable("x", V, k)
                 + Jet.monomial((2, 0), V, Fraction(rng.randint(-2, 2), 4), k)
                 + Jet.monomial((1, 1), V, Fraction(rng.randint(-2, 2), 4), k))
            L = (Jet.variable("lam", V, k)
                 + Jet.monomial((0, 2), V, Fraction(rng.randint(-2, 2), 5), k))
            f = (S * g.compose({"x": X, "lam": L})).truncate(k)
            tr = transformation(g, f, k)
            res = tr.residual(g, f)
            assert res.is_zero() or all(sum(m) >= k for m in res.terms)
