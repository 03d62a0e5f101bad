import pytest
from hypothesis import given
from hypothesis import strategies as st

from artifact.configuration import (
    adjacent_pairs,
    enumerate_topes,
    flip,
    is_flip_salient,
    mask_of,
    random_regular_covector,
    tope_of,
    tope_path,
    tope_in_cone,
)
from artifact.errors import InvalidPath, ParseError
from artifact.quadrant import (
    WPolynomial,
    bg_polynomial,
    bg_polynomial_expanded,
    flip_map,
    geom_eval,
    geom_eval_semiclosed,
    lv_polynomial,
    path_expansion,
    path_flip_list,
    SignedSubset,
    path_flip_totals,
    quadrant_coefficient,
    support_is_salient,
    wallcross_delta,
)

from conftest import SUITE, b2, hexagon, interval, knapsack, three_vectors

HEXAGON_X = (
    "+p1p2p3p4p5p6 -p1p2p3p4q5q6 -p1p2p3p5q4q6 -p1p2p3p6q4q5 -2p1p2p3q4q5q6 -p1p2p4p6q3q5 -p1p2p4q3q5q6"
    " -p1p2p6q3q4q5 -p1p2q3q4q5q6 -p1p3p5p6q2q4 -p1p3p5q2q4q6 -p1p3p6q2q4q5 -p1p3q2q4q5q6 -p1p4p5p6q2q3"
    " -p1p4p6q2q3q5 -p1p5p6q2q3q4 -p1p6q2q3q4q5 -p2p3p4p5q1q6 -p2p3p4q1q5q6 -p2p3p5q1q4q6 -p2p3q1q4q5q6"
    " -p2p4p5p6q1q3 -p2p4p5q1q3q6 -p2p4p6q1q3q5 -p2p4q1q3q5q6 -p3p4p5p6q1q2 -p3p4p5q1q2q6 -p3p5p6q1q2q4"
    " -p3p5q1q2q4q6 -2p4p5p6q1q2q3 -p4p5q1q2q3q6 -p4p6q1q2q3q5 -p5p6q1q2q3q4 +q1q2q3q4q5q6"
)


def poly(text, n):
    return WPolynomial.from_text(text, n)


def test_interval_polynomial():
    iv = interval()
    x = bg_polynomial(iv, tope_of(iv, [1]))
    assert x == poly("+p1p2 -q1q2", 2)
    assert x.coefficients == {0: 1, 3: -1}


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_knapsack_polynomial(n):
    cfg = knapsack(n)
    x = bg_polynomial(cfg, tope_of(cfg, [1]))
    assert x.coefficients == {0: 1, cfg.full_mask: -((-1) ** n)}


def test_three_vector_polynomial():
    cfg = three_vectors()
    x = bg_polynomial(cfg, tope_of(cfg, [2, 1]))
    assert x == poly("+p1p2p3 -p1q2q3 +q1p2p3 -q1q2q3", 3)
    # the factored form (p1+q1)(p2+q2)p3 + (p1+q1)p2 - (p1+q1)(p2+q2)(p3+q3), with p3+q3 = 1 in the middle term
    assert x.coefficients == {0: 1, mask_of([2, 3]): -1, mask_of([1]): 1, mask_of([1, 2, 3]): -1}


def test_b2_printed_polynomials():
    cfg = b2()
    t1, t2 = tope_of(cfg, [1, 2]), tope_of(cfg, [2, 1])
    assert bg_polynomial(cfg, t1).to_text() == "+p1p2p3p4 -p1q2q3p4 -q1p2p3q4 +q1q2q3q4"
    assert bg_polynomial(cfg, t2) == poly("+p1p2p3p4 +q1p2p3p4 +p1q2q3q4 +q1q2q3q4", 4)
    a = mask_of([2, 3])
    flipped = bg_polynomial(flip(cfg, a), t2)
    assert flip_map(flipped, a) == poly("+p1q2q3p4 +p1q2q3q4 +q1p2p3p4 +q1p2p3q4", 4)
    assert bg_polynomial(cfg, t1) == bg_polynomial(cfg, t2) - flip_map(flipped, a)


def test_hexagon_polynomial():
    cfg = hexagon()
    x = bg_polynomial(cfg, tope_of(cfg, [2, -1, 2, 4]))
    assert len(x) == 34
    assert x.to_text() == poly(HEXAGON_X, 6).to_text()
    assert x.coefficient(mask_of([4, 5, 6])) == -2
    assert x.coefficient(mask_of([1, 2, 3])) == -2


@pytest.mark.parametrize("name", list(SUITE))
def test_expansion_routes_agree(name):
    cfg = SUITE[name]()
    for t in enumerate_topes(cfg)[:40]:
        assert bg_polynomial(cfg, t) == bg_polynomial_expanded(cfg, t)


def test_lv_examples():
    cfg = three_vectors()
    tau1 = tope_of(cfg, [2, 1])
    y = lv_polynomial(cfg, tau1, [1, 1, 1])
    # -(p1+q1)(p2+q2)q3 + (p1+q1)p2(p3+q3)
    factored = -poly("+p1p2q3 +p1q2q3 +q1p2q3 +q1q2q3", 3) + poly("+p1p2p3 +p1p2q3 +q1p2p3 +q1p2q3", 3)
    assert y == factored == bg_polynomial(cfg, tau1)
    k3 = knapsack(3)
    t = tope_of(k3, [1])
    assert lv_polynomial(k3, t, [1, "1/2", "1/3"]) == bg_polynomial(k3, t)
    iv = interval()
    assert not lv_polynomial(iv, tope_of(iv, [-1]), [1, 2])


@pytest.mark.parametrize("name", list(SUITE))
def test_polarized_polynomial_equals_bg(name):
    cfg = SUITE[name]()
    topes = enumerate_topes(cfg)
    for seed in range(20):
        beta = random_regular_covector(cfg, seed)
        t = topes[seed % len(topes)]
        assert lv_polynomial(cfg, t, beta) == bg_polynomial(cfg, t)


def test_geom_eval_examples():
    iv = interval()
    x = bg_polynomial(iv, tope_of(iv, [1]))
    assert geom_eval(x, [3, -1]) == 0
    assert geom_eval(x, [-2, -3]) == -1
    assert geom_eval(x, [1, 2]) == 1
    assert geom_eval_semiclosed(x, 0, [0, -1]) == geom_eval(x, [0, -1])
    assert geom_eval_semiclosed(x, mask_of([1]), [0, 1]) == 0
    assert geom_eval_semiclosed(x, mask_of([1, 2]), [0, 0]) == -1


def test_wallcross_examples():
    cfg = b2()
    t1, t2 = tope_of(cfg, [1, 2]), tope_of(cfg, [2, 1])
    a, delta = wallcross_delta(cfg, t1, t2)
    assert a == mask_of([2, 3])
    assert delta == bg_polynomial(cfg, t1) - bg_polynomial(cfg, t2)
    iv = interval()
    a, delta = wallcross_delta(iv, tope_of(iv, [1]), tope_of(iv, [-1]))
    assert a == 3 and delta == poly("+p1p2 -q1q2", 2)


@pytest.mark.parametrize("name", list(SUITE))
def test_wallcross_identity_all_pairs(name):
    cfg = SUITE[name]()
    for t1, t2 in adjacent_pairs(cfg):
        a, delta = wallcross_delta(cfg, t1, t2)
        assert is_flip_salient(cfg, a)
        assert bg_polynomial(cfg, t1) == bg_polynomial(cfg, t2) + delta


def test_wall_inside_a_chamber_has_no_jump():
    from conftest import three_topes

    cfg = three_topes()
    zero_jumps = [1 for t1, t2 in adjacent_pairs(cfg) if not wallcross_delta(cfg, t1, t2)[1]]
    assert zero_jumps


def test_path_flip_list_examples():
    cfg = three_vectors()
    topes = enumerate_topes(cfg)
    t = topes[0]
    assert path_flip_list(cfg, t, t, [t]) == [SignedSubset(1, 0)]
    for nu in topes:
        path = tope_path(cfg, t, nu)
        entries = path_flip_list(cfg, t, nu, path)
        assert len(entries) == 2 ** (len(path) - 1)
        if len(path) == 2:
            a, _ = wallcross_delta(cfg, t, nu)
            assert [(e.sign, e.subset) for e in entries] == [(1, 0), (-1, a)]
    with pytest.raises(InvalidPath):
        path_flip_list(cfg, topes[0], topes[-1], [topes[0], topes[-1]])


@pytest.mark.parametrize("name", ["interval", "three_vectors", "b2", "three_topes", "knapsack3", "unit_square"])
def test_path_expansion(name):
    cfg = SUITE[name]()
    topes = enumerate_topes(cfg)
    for t in topes:
        for nu in topes:
            path = tope_path(cfg, t, nu)
            assert path_expansion(cfg, t, nu, path) == bg_polynomial(cfg, t)
            if len(path) <= 6:
                totals = {}
                for e in path_flip_list(cfg, t, nu, path):
                    totals[e.subset] = totals.get(e.subset, 0) + e.sign
                assert {k: v for k, v in totals.items() if v} == path_flip_totals(cfg, t, nu, path)


def test_path_expansion_on_hexagon_samples():
    cfg = hexagon()
    topes = enumerate_topes(cfg)
    start = tope_of(cfg, [2, -1, 2, 4])
    x = bg_polynomial(cfg, start)
    for nu in topes[::60]:
        assert path_expansion(cfg, start, nu, tope_path(cfg, start, nu)) == x


@pytest.mark.parametrize("name", ["interval", "three_vectors", "b2", "knapsack3", "three_topes"])
def test_quadrant_coefficient_routes(name):
    cfg = SUITE[name]()
    for t in enumerate_topes(cfg):
        x = bg_polynomial(cfg, t)
        for b in range(1 << cfg.n):
            # the function raises if its two routes disagree
            assert quadrant_coefficient(cfg, t, b) == x.coefficient(b)


def test_quadrant_coefficient_examples():
    cfg = three_vectors()
    tau1 = tope_of(cfg, [2, 1])
    assert quadrant_coefficient(cfg, tau1, 0) == 1
    assert quadrant_coefficient(cfg, tau1, cfg.full_mask) == (-1) ** cfg.d
    assert is_flip_salient(cfg, mask_of([2]))
    assert quadrant_coefficient(cfg, tau1, mask_of([2])) == 0


@pytest.mark.parametrize("name", list(SUITE))
def test_support_salience_and_boundary_coefficients(name):
    cfg = SUITE[name]()
    for t in enumerate_topes(cfg):
        x = bg_polynomial(cfg, t)
        assert support_is_salient(cfg, x)
        if tope_in_cone(cfg, t):
            assert x.coefficient(0) == 1
            assert x.coefficient(cfg.full_mask) == (-1) ** cfg.d


@pytest.mark.parametrize("name", ["three_vectors", "b2_integral", "three_topes"])
def test_geometric_brianchon_gram(name):
    from itertools import product

    from artifact.continuation import partition_polytope_points

    cfg = SUITE[name]()
    for t in enumerate_topes(cfg):
        if not tope_in_cone(cfg, t):
            continue
        lam = tuple(int(3 * v) for v in t.representative)
        x = bg_polynomial(cfg, t)
        inside = set(partition_polytope_points(cfg, lam))
        # every lattice point of V(lam) in a box: value 1 exactly on the polytope
        sol = next(iter(inside)) if inside else None
        if sol is None:
            continue
        for coeffs in product(range(-3, 4), repeat=cfg.d):
            p = list(sol)
            for c, k in zip(coeffs, cfg.kernel_integer):
                p = [a + c * b for a, b in zip(p, k)]
            assert geom_eval(x, p) == (1 if tuple(p) in inside else 0)


def test_semiclosed_brianchon_gram():
    cfg = b2()
    t1 = tope_of(cfg, [1, 2])
    x = bg_polynomial(cfg, t1)
    lam = (1, 2)
    from artifact.configuration import vertex, basic_subsets_of_tope

    # vertices of the tetragon: semi-closed sets exclude exactly the faces x_i = 0, i in A
    for a in range(16):
        for k in basic_subsets_of_tope(cfg, t1):
            s = vertex(cfg, k, lam)
            zero = mask_of(i + 1 for i, v in enumerate(s) if v == 0)
            expected = 0 if zero & a else 1
            assert geom_eval_semiclosed(x, a, s) == expected


texts = st.dictionaries(st.integers(0, 15), st.integers(-3, 3).filter(bool), max_size=8)


@given(texts)
def test_text_round_trip(coeffs):
    w = WPolynomial(4, coeffs)
    assert WPolynomial.from_text(w.to_text(), 4) == w


@given(texts, st.integers(0, 15))
def test_flip_is_involution(coeffs, a):
    w = WPolynomial(4, coeffs)
    assert flip_map(flip_map(w, a), a) == w
    assert flip_map(w, 0) == w


def test_text_parse_errors():
    for bad in ("p1p2", "+p1", "+p1p1", "+p1x2", "+p1p5"):
        with pytest.raises(ParseError):
            WPolynomial.from_text(bad, 2)
    assert WPolynomial.from_text("0", 3) == WPolynomial(3)
    assert WPolynomial.from_text("+q2p1", 2).coefficients == {2: 1}
