import random
from fractions import Fraction as F

import pytest

from lsurf.quadfield import QuadNum
from lsurf.sampling import sample_a_periodic_point, sample_b_periodic_point, sample_point
from lsurf.surface import (
    GeneratorWord,
    InvalidPointError,
    SurfacePoint,
    apply_A,
    apply_B,
    apply_word,
    delta_A,
    delta_B,
    is_A_periodic,
    is_B_periodic,
    n_value,
    parse_point,
    parse_word,
    prototype,
    s_value,
    splitting_ratio,
    surface,
    thresholds,
)

ALL_SURFACES = [(8, 0), (5, -1), (17, 1)]


def pt(proto, xr, xi, yr, yi):
    return SurfacePoint.from_fractions(proto, F(xr), F(xi), F(yr), F(yi))


# -- prototypes ----------------------------------------------------------------


def test_prototype_validation():
    with pytest.raises(ValueError):
        prototype(9, 0)  # square
    with pytest.raises(ValueError):
        prototype(8, -1)  # needs D = 1 mod 4
    with pytest.raises(ValueError):
        prototype(5, 1)  # needs D = 1 mod 8
    with pytest.raises(ValueError):
        prototype(3, 0)


def test_surface_selector():
    assert surface("L8").name == "L8"
    assert surface("L5-1").eps == -1
    assert surface("L17+1").eps == 1
    with pytest.raises(ValueError):
        surface("M8")


def test_generator_matrices(L8, L5m1, L17p1):
    w8 = L8.w
    assert L8.genA[1][0] == w8 and L8.genB[0][1] == 1 + w8
    assert L5m1.genB[0][1] == L5m1.w
    assert L17p1.genA[1][0] == L17p1.w - 1


# -- canonical domain ------------------------------------------------------------


def test_singular_corners_rejected(L8):
    with pytest.raises(InvalidPointError):
        pt(L8, 0, 0, 0, 0)
    with pytest.raises(InvalidPointError):
        pt(L8, 1, 0, 1, 0)


def test_out_of_polygon_rejected(L8):
    with pytest.raises(InvalidPointError):
        pt(L8, -1, 0, 0, 0)
    with pytest.raises(InvalidPointError):
        pt(L8, 3, 0, F(1, 2), 0)  # x beyond 1+w
    with pytest.raises(InvalidPointError):
        pt(L8, F(3, 2), 0, F(5, 4), 0)  # upper region needs x < 1
    with pytest.raises(InvalidPointError):
        pt(L8, 1, 0, F(5, 4), 0)  # x = 1 is identified away above y = 1


def test_top_edge_identification(L8):
    # (x, 1) with x > 1 is the same surface point as (x, 0)
    P = pt(L8, 2, 0, 1, 0)
    assert P.y.is_zero()
    assert P == pt(L8, 2, 0, 0, 0)
    # with x <= 1 the height-1 point is interior and kept
    Q = pt(L8, F(1, 2), 0, 1, 0)
    assert Q.y == 1


def test_parse_point_roundtrip(L8):
    P = parse_point(L8, "-141,100,1/2,0")
    assert P.key == (F(-141), F(100), F(1, 2), F(0))
    assert str(P) == "-141,100,1/2,0"
    with pytest.raises(ValueError):
        parse_point(L8, "1,2,3")


# -- actions ---------------------------------------------------------------------


def test_apply_B_lower_example(L8):
    P = pt(L8, 0, 0, F(1, 2), 0)
    assert apply_B(P, 1).key == (F(1, 2), F(1, 2), F(1, 2), F(0))


def test_apply_A_left_example(L8):
    P = pt(L8, F(1, 2), 0, 0, 0)
    assert apply_A(P, 1).key == (F(1, 2), F(0), F(0), F(1, 2))


def test_identity_powers(L8, rng):
    for _ in range(20):
        P = sample_point(L8, rng.randint(1, 8), rng, box=500)
        assert apply_A(P, 0) == P
        assert apply_B(P, 0) == P


def test_apply_A_right_cylinder_periodic_return(L8):
    # x = 1 + w/2 has rational part 1: the third vertical power returns y to itself
    P = pt(L8, 1, F(1, 2), F(1, 4), 0)
    assert apply_A(P, 3) == P
    assert is_A_periodic(P)


def test_action_additivity(L8, L5m1, L17p1, rng):
    for proto in (L8, L5m1, L17p1):
        for _ in range(25):
            P = sample_point(proto, rng.randint(1, 6), rng, box=300)
            k1, k2 = rng.randint(-10, 10), rng.randint(-10, 10)
            assert apply_A(apply_A(P, k1), k2) == apply_A(P, k1 + k2)
            assert apply_B(apply_B(P, k1), k2) == apply_B(P, k1 + k2)


def test_composition_oracle_for_double_step(L8):
    P = pt(L8, 0, 0, F(3, 4), F(1, 4))
    assert apply_B(apply_B(P, 1), 1) == apply_B(P, 2)


# -- increments -------------------------------------------------------------------


def test_delta_right_cylinder_closed_form(L8, rng):
    # points with x > 1: increment is k times the periodicity defect
    for _ in range(40):
        P = sample_point(L8, rng.randint(1, 8), rng, box=200)
        if (P.x - 1).sign() <= 0:
            continue
        k = rng.randint(-9, 9)
        assert delta_A(P, k) == k * (P.x.r - 1)


def test_delta_zero_power(L8, rng):
    P = sample_point(L8, 3, rng, box=100)
    assert delta_A(P, 0) == 0 and delta_B(P, 0) == 0


@pytest.mark.parametrize("D,eps", ALL_SURFACES)
def test_delta_near_cylinder_remainder_bound(D, eps, rng):
    # near-cylinder closed form: delta = -k * x_i * coeff - r with |r| < 1
    proto = prototype(D, eps)
    coeff_a, coeff_b = proto.a_left_coeff, proto.b_lower_coeff
    checked_a = checked_b = 0
    while checked_a < 30 or checked_b < 30:
        P = sample_point(proto, rng.randint(1, 6), rng, box=150)
        k = rng.choice([kk for kk in range(-7, 8) if kk])
        if (P.x - 1).sign() <= 0 and checked_a < 30:
            r = -(proto.field.from_rational(delta_A(P, k)) + coeff_a * (k * P.x.i))
            assert (r - 1).sign() < 0 and (r + 1).sign() > 0
            checked_a += 1
        if (P.y - 1).sign() <= 0 and checked_b < 30:
            r = -(proto.field.from_rational(delta_B(P, k)) + coeff_b * (k * P.y.i))
            assert (r - 1).sign() < 0 and (r + 1).sign() > 0
            checked_b += 1


def test_delta_matches_far_cylinder_condition(L5m1, rng):
    # for the -1 variant the far-cylinder defect involves both parts of x
    for _ in range(200):
        P = sample_point(L5m1, rng.randint(1, 6), rng, box=150)
        if (P.x - 1).sign() > 0:
            k = rng.randint(-6, 6)
            assert delta_A(P, k) == k * (P.x.r + P.x.i - 1)


# -- periodicity and splitting ratios ----------------------------------------------


def test_periodicity_examples(L8):
    assert is_B_periodic(pt(L8, F(1, 3), F(1, 3), F(1, 2), 0))
    assert is_A_periodic(pt(L8, 1, F(1, 2), F(1, 4), 0))
    assert not is_A_periodic(pt(L8, 0, F(1, 3), F(1, 4), 0))


def test_splitting_ratio_examples(L8):
    assert splitting_ratio(pt(L8, F(1, 3), 0, F(1, 2), 0), "horizontal") == F(1, 2)
    assert splitting_ratio(pt(L8, F(1, 2), 0, 1, 0), "horizontal") == 1
    upper = pt(L8, F(1, 2), 0, F(1, 2), F(1, 2))
    assert splitting_ratio(upper, "horizontal") == F(1, 2)
    with pytest.raises(ValueError):
        splitting_ratio(upper, "diagonal")


@pytest.mark.parametrize("D,eps", ALL_SURFACES)
def test_periodicity_iff_rational_splitting_ratio(D, eps, rng):
    proto = prototype(D, eps)
    for _ in range(150):
        P = sample_point(proto, rng.randint(1, 6), rng, box=60)
        assert is_B_periodic(P) == splitting_ratio(P, "horizontal").is_rational()
        assert is_A_periodic(P) == splitting_ratio(P, "vertical").is_rational()


@pytest.mark.parametrize("D,eps", ALL_SURFACES)
def test_periodic_points_return_after_n_steps(D, eps, rng):
    proto = prototype(D, eps)
    for _ in range(25):
        N = rng.randint(1, 6)
        P = sample_a_periodic_point(proto, N, rng, b_periodic=None)
        assert apply_A(P, n_value(P)) == P
        Q = sample_b_periodic_point(proto, N, rng, a_periodic=None)
        assert apply_B(Q, n_value(Q)) == Q


# -- s, N, thresholds ----------------------------------------------------------------


def test_s_and_n_examples(L8):
    P = pt(L8, F(-23, 6), 3, F(10, 3), -2)  # |x_i| + |y_i| = 5, lcm of denominators 6
    assert s_value(P) == 5
    assert n_value(P) == 6
    Q = pt(L8, 2, 0, 1, 0)
    assert s_value(Q) == 0 and n_value(Q) == 1


def test_thresholds_L8_N1(L8):
    th = thresholds(L8, 1)
    assert th.k0 == 3 and th.k1 == 3
    assert th.k == 4
    w = L8.w
    assert th.l1 == (w + 1) * 4  # 2(N+1)/(w-1) with 1/(w-1) = w+1
    assert th.l == 10


def test_thresholds_multiple_of_n(L8, L5m1, L17p1):
    for proto in (L8, L5m1, L17p1):
        for N in (1, 2, 3, 5):
            th = thresholds(proto, N)
            assert th.k % N == 0 and th.l % N == 0
            assert (th.k - th.k1).sign() > 0 and (th.k - N - th.k1).sign() <= 0
            assert (th.l - th.l1).sign() > 0
            assert th.l0.sign() > 0 and th.k0.sign() > 0


# -- words -----------------------------------------------------------------------------


def test_word_normal_form():
    word = GeneratorWord([("A", 1), ("A", 2), ("B", 0), ("B", -1), ("B", 1), ("A", 3)])
    assert word.letters == (("A", 6),)
    assert len(GeneratorWord([("A", 1), ("A", -1)])) == 0


def test_word_str_and_parse():
    word = GeneratorWord([("A", 1), ("B", -1), ("A", -1)])
    assert str(word) == "A^-1 B^-1 A^1"
    assert parse_word("A^-1 B^-1 A^1") == word
    assert parse_word("<empty>") == GeneratorWord()
    with pytest.raises(ValueError):
        parse_word("C^2")


def test_word_inverse_and_concat(L8, rng):
    for _ in range(20):
        P = sample_point(L8, rng.randint(1, 6), rng, box=100)
        letters = [
            ("A" if rng.random() < 0.5 else "B", rng.choice((-2, -1, 1, 2)))
            for _ in range(rng.randint(0, 10))
        ]
        word = GeneratorWord(letters)
        assert apply_word(P, word * word.inverse()) == P
        assert apply_word(apply_word(P, word), word.inverse()) == P


def test_apply_word_examples(L8):
    P = pt(L8, F(1, 2), 0, F(1, 3), 0)
    assert apply_word(P, GeneratorWord()) == P
    assert apply_word(P, GeneratorWord([("A", 1), ("A", -1)])) == P


def test_word_preserves_denominator(L8, rng):
    for _ in range(30):
        P = sample_point(L8, rng.randint(1, 10), rng, box=500)
        letters = [
            ("A" if rng.random() < 0.5 else "B", rng.choice((-3, -1, 1, 3)))
            for _ in range(12)
        ]
        assert n_value(apply_word(P, GeneratorWord(letters))) == n_value(P)
