from fractions import Fraction
from itertools import product
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from artifact.configuration import (
    Configuration,
    adjacent_pairs,
    enumerate_topes,
    in_fattened_tope,
    is_flip_salient,
    mask_of,
    tope_of,
)
from artifact.continuation import (
    WeightPolynomial,
    brute_force_count,
    count_flip_polytope,
    discrete_sum,
    lattice_points_flip_polytope,
    measure_constant,
    partition_polytope_points,
    period,
    quasipoly_fit,
    random_regular_xi,
    signed_support,
    sweep,
    toric_multiplicity,
    virtual_dimension,
    volume_integral,
    wallcross_count_check,
)
from artifact.errors import IrregularXi, NonIntegral, NotSalient
from artifact.quadrant import bg_polynomial

from conftest import SUITE, b2, b2_integral, hexagon, interval, knapsack, one_two, three_vectors


def box_index(cfg, radius):
    """Group every integral x in [-radius, radius]^N by (sign mask, M x)."""
    out = {}
    for x in product(range(-radius, radius + 1), repeat=cfg.n):
        mask = sum(1 << i for i, v in enumerate(x) if v < 0)
        out.setdefault((mask, cfg.apply(x)), []).append(x)
    return out


_INDEX = {}


def small_index(name):
    if name not in _INDEX:
        make, radius = SMALL[name]
        _INDEX[name] = box_index(make(), radius)
    return _INDEX[name]


def test_flip_polytope_examples():
    iv = interval()
    assert lattice_points_flip_polytope(iv, 0, [2]) == [(0, 2), (1, 1), (2, 0)]
    assert lattice_points_flip_polytope(iv, 3, [-5]) == [(-4, -1), (-3, -2), (-2, -3), (-1, -4)]
    assert lattice_points_flip_polytope(iv, 0, [-1]) == []
    with pytest.raises(NotSalient):
        lattice_points_flip_polytope(iv, 1, [0])
    with pytest.raises(NonIntegral):
        lattice_points_flip_polytope(b2(), 0, [1, 1])
    with pytest.raises(NonIntegral):
        lattice_points_flip_polytope(iv, 0, ["1/2"])


def test_empty_coset_gives_nothing():
    cfg = Configuration([[2], [2]])
    assert lattice_points_flip_polytope(cfg, 0, [3]) == []
    assert brute_force_count(cfg, [3]) == 0
    assert brute_force_count(cfg, [4]) == 3


SMALL = {
    "interval": (interval, 8),
    "three_vectors": (three_vectors, 10),
    "b2_integral": (b2_integral, 9),
    "one_two": (one_two, 10),
    "knapsack3": (knapsack, 6),
}


@pytest.mark.parametrize("name", list(SMALL))
def test_flip_polytopes_match_box_scan(name):
    make, radius = SMALL[name]
    cfg = make()
    index = small_index(name)
    for mask in range(1 << cfg.n):
        if not is_flip_salient(cfg, mask):
            continue
        for lam in product(range(-3, 4), repeat=cfg.r):
            pts = lattice_points_flip_polytope(cfg, mask, lam)
            # the box must be large enough to be a faithful oracle
            assert all(max(map(abs, x)) < radius for x in pts)
            assert pts == sorted(index.get((mask, lam), []))
            assert count_flip_polytope(cfg, mask, lam) == len(pts)


@settings(max_examples=60)
@given(st.sampled_from(list(SMALL)), st.data())
def test_brute_force_count_matches_box_scan(name, data):
    cfg = SMALL[name][0]()
    lam = data.draw(st.tuples(*[st.integers(-2, 4)] * cfg.r))
    assert brute_force_count(cfg, lam) == len(small_index(name).get((0, lam), []))


def test_signed_support_examples():
    iv = interval()
    pos = tope_of(iv, [1])
    assert signed_support(iv, pos, [-5]) == [((-4, -1), -1), ((-3, -2), -1), ((-2, -3), -1), ((-1, -4), -1)]
    assert signed_support(iv, pos, [3]) == [(x, 1) for x in partition_polytope_points(iv, [3])]
    assert signed_support(iv, tope_of(iv, [-1]), [3]) == []


@pytest.mark.parametrize("name", ["three_vectors", "b2_integral", "three_topes", "unit_square"])
def test_signed_support_disjointness(name):
    cfg = SUITE[name]()
    for t in enumerate_topes(cfg):
        x = bg_polynomial(cfg, t)
        for lam in product(range(-3, 4), repeat=cfg.r):
            seen = {}
            for mask in x.coefficients:
                for p in lattice_points_flip_polytope(cfg, mask, lam):
                    assert p not in seen
                    seen[p] = mask


def test_discrete_sum_examples():
    iv = interval()
    pos = tope_of(iv, [1])
    assert discrete_sum(iv, pos, None, [2]) == 3
    assert discrete_sum(iv, pos, None, [-5]) == -4
    assert discrete_sum(iv, pos, None, [0]) == 1
    one = WeightPolynomial.one(2)
    assert discrete_sum(iv, pos, one, [-5]) == -4
    # sum of x1 over x1 + x2 = 4: 0+1+2+3+4
    assert discrete_sum(iv, pos, WeightPolynomial.coordinate_product(2, [1]), [4]) == 10


def test_brute_force_count_examples():
    assert brute_force_count(knapsack(3), [4]) == 15
    assert brute_force_count(knapsack(3), [-1]) == 0
    assert brute_force_count(interval(), [2]) == 3


@pytest.mark.parametrize("name", ["interval", "knapsack3", "three_vectors", "b2_integral", "unit_square", "one_two"])
def test_continuity_on_fattened_tope(name):
    cfg = SUITE[name]()
    for t in enumerate_topes(cfg):
        for lam in product(range(-4, 5), repeat=cfg.r):
            if in_fattened_tope(cfg, t, lam):
                assert discrete_sum(cfg, t, None, lam) == brute_force_count(cfg, lam)


def test_volume_examples():
    iv = interval()
    pos = tope_of(iv, [1])
    for b in (1, 7, Fraction(5, 3)):
        assert volume_integral(iv, pos, 0, [1, 2], [b]) == b
    k3 = knapsack(3)
    for t in (2, 6, Fraction(1, 2)):
        assert volume_integral(k3, tope_of(k3, [1]), 0, [1, 2, 5], [t]) == Fraction(t) ** 2 / 2
    assert volume_integral(k3, tope_of(k3, [1]), 0, [1, 2, 5], [0]) == 0
    with pytest.raises(IrregularXi):
        volume_integral(iv, pos, 0, [1, 1], [3])


def test_measure_constants_on_unimodular_kernel():
    cfg = three_vectors()
    for mask in (mask_of([1, 2]), mask_of([1, 3]), mask_of([2, 3])):
        assert measure_constant(cfg, mask) == 1
    cfg = one_two()
    assert measure_constant(cfg, mask_of([1])) == 1
    assert measure_constant(cfg, mask_of([2])) == Fraction(1, 2)


@pytest.mark.parametrize("name", ["interval", "knapsack3", "three_vectors", "b2", "b2_integral", "hexagon", "three_topes"])
def test_volume_xi_independence(name):
    cfg = SUITE[name]()
    topes = enumerate_topes(cfg)
    for k, t in enumerate(topes[:: max(1, len(topes) // 6)]):
        lam = tuple(3 * v for v in t.representative)
        xi1 = random_regular_xi(cfg, t, seed=k)
        xi2 = random_regular_xi(cfg, t, seed=100 + k)
        assert xi1 != xi2
        assert volume_integral(cfg, t, 0, xi1, lam) == volume_integral(cfg, t, 0, xi2, lam)


def test_moment_integrals_on_segment():
    # on x1 + x2 = b, x = (b - s, s) for s in [0, b], unit lattice step length;
    # <xi, x> = xi1*b + (xi2 - xi1)*s, integrate the power in closed form
    iv = interval()
    pos = tope_of(iv, [1])
    for xi in ((1, 2), (3, -5), (-2, 7)):
        for b in (1, 4, Fraction(7, 2)):
            for degree in (0, 1, 2, 3):
                a, c = Fraction(xi[0] * b), xi[1] - xi[0]
                exact_value = ((a + c * b) ** (degree + 1) - a ** (degree + 1)) / (c * factorial(degree + 1))
                assert volume_integral(iv, pos, degree, xi, [b]) == exact_value


@pytest.mark.parametrize("name", ["knapsack3", "three_vectors", "b2_integral", "three_topes"])
def test_volume_is_polynomial_along_lines(name):
    from artifact.continuation import fit_quasipolynomial

    cfg = SUITE[name]()
    t = enumerate_topes(cfg)[0]
    xi = random_regular_xi(cfg, t)
    direction = tuple(Fraction(k + 2, 3) for k in range(cfg.r))
    start = tuple(Fraction(-1, 2) for _ in range(cfg.r))
    for degree in (0, 1):
        def along(s):
            lam = tuple(a + s[0] * b for a, b in zip(start, direction))
            return volume_integral(cfg, t, degree, xi, lam)

        fit = fit_quasipolynomial(along, (0,), 1, degree + cfg.d)
        assert fit.holdout_verified


def test_volume_is_leading_count_coefficient():
    k3 = knapsack(3)
    t = tope_of(k3, [1])
    vol = volume_integral(k3, t, 0, [1, 2, 5], [1000])
    count = brute_force_count(k3, [1000])
    assert abs(count / vol - 1) < Fraction(2, 100)


def test_quasipoly_examples():
    iv = interval()
    fit = quasipoly_fit(iv, tope_of(iv, [1]), None, [0])
    assert fit.period == 1 and fit.holdout_verified
    assert fit.coefficients == {(0,): 1, (1,): 1}
    cfg = one_two()
    t = tope_of(cfg, [1])
    assert period(cfg) == 2
    for base in (0, 1):
        fit = quasipoly_fit(cfg, t, None, [base])
        assert fit.holdout_verified
        for lam in range(base, 10, 2):
            assert fit([lam]) == lam // 2 + 1 == brute_force_count(cfg, [lam])
    k4 = knapsack(4)
    fit = quasipoly_fit(k4, tope_of(k4, [1]), WeightPolynomial.coordinate_product(4, [1]), [0])
    assert fit.degree == 4 and fit.holdout_verified


def test_quasipoly_b2():
    cfg = b2_integral()
    assert period(cfg) == 2
    for t in enumerate_topes(cfg):
        for h in (None, WeightPolynomial.coordinate_product(4, [1])):
            assert quasipoly_fit(cfg, t, h, [0, 1]).holdout_verified


@pytest.mark.parametrize("name", ["interval", "three_vectors", "b2_integral", "unit_square", "three_topes"])
def test_wallcross_counts(name):
    cfg = SUITE[name]()
    weights = [None, WeightPolynomial.coordinate_product(cfg.n, [1]), WeightPolynomial.coordinate_product(cfg.n, [1, 2])]
    for t1, t2 in adjacent_pairs(cfg):
        for k in (1, 2, 3):
            lam = tuple(int(k * v) for v in t2.representative)
            for h in weights:
                lhs, rhs = wallcross_count_check(cfg, t1, t2, h, lam)
                assert lhs == rhs


def test_wallcross_count_examples():
    iv = interval()
    lhs, rhs = wallcross_count_check(iv, tope_of(iv, [1]), tope_of(iv, [-1]), None, [-5])
    assert lhs == rhs == -4
    cfg = b2_integral()
    t1, t2 = tope_of(cfg, [1, 2]), tope_of(cfg, [2, 1])
    lam = (8, 4)
    lhs, rhs = wallcross_count_check(cfg, t1, t2, None, lam)
    triangle = len(lattice_points_flip_polytope(cfg, mask_of([2, 3]), lam))
    assert lhs == rhs == brute_force_count(cfg, lam) - triangle


def test_toric_examples():
    cfg = hexagon()
    ample = tope_of(cfg, [2, -1, 2, 4])
    assert toric_multiplicity(cfg, ample, [200, 234, 478, -200, -100, -100]) == -2
    assert toric_multiplicity(cfg, ample, [0, 1, 2, 3, 4, 5]) == 1
    assert toric_multiplicity(cfg, ample, [-1] * 6) == 1


def test_virtual_dimension_examples():
    cfg = hexagon()
    ample = tope_of(cfg, [2, -1, 2, 4])
    lam = (200, -100, 200, 400)
    assert virtual_dimension(cfg, ample, lam) == brute_force_count(cfg, lam)
    small = (20, -10, 20, 40)
    assert virtual_dimension(cfg, ample, small) == brute_force_count(cfg, small)


def test_virtual_dimension_far_past_walls():
    cfg = hexagon()
    ample = tope_of(cfg, [2, -1, 2, 4])
    lam = (20, 43, 37, -40)
    x = bg_polynomial(cfg, ample)
    per_piece = sum(z * len(lattice_points_flip_polytope(cfg, b, lam)) for b, z in x.coefficients.items())
    assert virtual_dimension(cfg, ample, lam) == per_piece


def test_sweep_rows():
    cfg = interval()
    rows = sweep(cfg, tope_of(cfg, [1]), [-2], [2], 4, xi=[1, 2])
    assert [(r[0], r[1], r[2], r[3]) for r in rows] == [
        ((-2,), 0, -1, -2),
        ((-1,), 0, 0, -1),
        ((0,), 1, 1, 0),
        ((1,), 2, 2, 1),
        ((2,), 3, 3, 2),
    ]


def test_weight_polynomial():
    h = WeightPolynomial(3, [("1/2", [2, 0, 0]), (3, [0, 1, 1])])
    assert h([2, 1, 5]) == 17
    assert h.degree == 2 and not h.is_constant()
    assert WeightPolynomial.one(3).is_constant()
