import cmath
import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from picard.catalog import PARABOLIC_ISOTROPY
from picard.group import FORM_NP, GENERATORS, GMatrix, word
from picard.horo import (
    BoundaryError,
    HoroPoint,
    ParabolicParams,
    SiegelWord,
    act,
    act_parabolic,
    base_vector,
    fixed_point_conditions,
    gamma_of_beta0,
    horo_to_vector,
    in_diamond,
    in_siegel_strip,
    isotropy_generator,
    siegel_reduce,
    vector_to_horo,
)
from strategies import finite, points, words


def proj_equal(u, v, tol=1e-12):
    u, v = np.asarray(u, dtype=complex), np.asarray(v, dtype=complex)
    return np.linalg.matrix_rank(np.stack([u, v]), tol=tol * max(np.abs(u).max(), np.abs(v).max())) == 1


def q(u, v):
    return complex(np.conj(u) @ FORM_NP @ v)


def test_base_vector():
    v0 = base_vector()
    assert q(v0, v0) == 2
    assert np.allclose(FORM_NP @ v0, v0)  # +1 eigenvector
    eps = GENERATORS["epsilon"].to_numpy()
    assert proj_equal(eps @ v0, v0)
    e1 = np.array([1, 0, 0], dtype=complex)
    assert q(e1, e1) == 0


@pytest.mark.parametrize(
    "z, v",
    [((1, 0, 0), (1j, 0, 1)), ((2.5, 0, 0), (1j * 6.25, 0, 1)), ((1, 1j, 0), (1.5j, 1, 1))],
)
def test_horo_to_vector(z, v):
    assert proj_equal(horo_to_vector(HoroPoint(*z)), v)
    assert vector_to_horo(v).isclose(HoroPoint(*z), 1e-14)


def test_vector_to_horo_scale_invariant():
    z = vector_to_horo(np.array([1.5j, 1, 1]) * (2 - 3j))
    assert z.isclose(HoroPoint(1, 1j, 0), 1e-14)


def test_boundary_vectors_rejected():
    with pytest.raises(BoundaryError):
        vector_to_horo([1, 0, 1])
    with pytest.raises(BoundaryError):
        vector_to_horo([1, 0, 0])


def test_horo_to_vector_matches_group_matrices():
    # u(beta, r) a(y) applied to the base vector, with the Langlands matrices
    y, b, r = 1.3, 0.4 - 0.7j, -0.25
    n = ParabolicParams(1.0, 1.0, b, r).matrix()
    a = ParabolicParams(y, 1.0, 0, 0).matrix()
    assert proj_equal(n @ a @ base_vector(), horo_to_vector(HoroPoint(y, b, r)))


@given(points())
def test_vector_roundtrip_and_positivity(z):
    v = horo_to_vector(z)
    assert q(v, v).real > 0
    # Q(v, v) = 2 y^2 for the normalized vector
    assert q(v, v).real == pytest.approx(2 * z.y**2, rel=1e-12)
    assert vector_to_horo(v).isclose(z, 1e-9)


def test_point_validation():
    with pytest.raises(ValueError):
        HoroPoint(0, 0, 0)
    with pytest.raises(ValueError):
        HoroPoint(-1, 0, 0)
    assert HoroPoint.from_json(HoroPoint(1, 2 - 1j, 3).to_json()) == HoroPoint(1, 2 - 1j, 3)


@pytest.mark.parametrize("y, r", [(0.5, 0.0), (2.0, 0.3), (1.0, -4.0)])
def test_act_examples(y, r):
    eps = GENERATORS["epsilon"]
    assert act(eps, HoroPoint(y, 0, r)).isclose(HoroPoint(y, 0, r), 1e-14)


def test_act_more_examples():
    assert act(GENERATORS["epsilon"], HoroPoint(1, 1j, 0)).isclose(HoroPoint(1, 1, 0), 1e-14)
    assert act(GENERATORS["tau"], HoroPoint(1, 0, 0)).isclose(HoroPoint(1, 0, 1), 1e-14)


@given(points(), words(), words())
def test_act_is_an_action(z, a, b):
    ga, gb = a[1], b[1]
    assume(max(ga.max_norm(), gb.max_norm()) < 200)
    lhs = act(ga @ gb, z)
    rhs = act(ga, act(gb, z))
    assert lhs.distance(rhs) <= 1e-7 * max(1.0, lhs.coords().__abs__().max())


@pytest.mark.parametrize(
    "p, z, want",
    [
        ((1, 1, 0, 1), (0.7, 0.2 + 0.1j, 0.4), (0.7, 0.2 + 0.1j, 1.4)),
        ((1, 1j, 0, 0), (1, 1j, 0), (1, 1, 0)),
        ((2, 1, 0, 0), (1, 1, 1), (2, 2, 4)),
    ],
)
def test_act_parabolic_examples(p, z, want):
    assert act_parabolic(ParabolicParams(*p), HoroPoint(*z)).isclose(HoroPoint(*want), 1e-14)


@given(
    points(),
    st.floats(0.3, 3, **finite),
    st.floats(0, 2 * math.pi, **finite),
    st.complex_numbers(max_magnitude=3, **finite),
    st.floats(-3, 3, **finite),
)
def test_parabolic_formula_matches_matrix_action(z, y, theta, b, r):
    p = ParabolicParams(y, cmath.exp(1j * theta), b, r)
    assert act_parabolic(p, z).distance(act(p.matrix(), z)) <= 1e-9


@pytest.mark.parametrize("name", ["tau", "sigma", "sigma_check", "epsilon"])
def test_parabolic_params_roundtrip(name):
    g = GENERATORS[name]
    p = ParabolicParams.from_matrix(g)
    assert np.allclose(p.matrix(), g.to_numpy())
    with pytest.raises(ValueError):
        ParabolicParams.from_matrix(GENERATORS["w"])


@pytest.mark.parametrize(
    "zeta, beta0, want",
    [(1j, 0, (0, 0)), (1j, 1j, (-1 + 1j, 1)), (1, 0.3 + 2j, (0, 0)), (1, 1j, (0, 0))],
)
def test_fixed_point_conditions(zeta, beta0, want):
    b, r = fixed_point_conditions(zeta, beta0)
    assert b == pytest.approx(want[0], abs=1e-15)
    assert r == pytest.approx(want[1], abs=1e-15)


@given(st.complex_numbers(max_magnitude=3, **finite), st.floats(0.3, 3, **finite), st.floats(-2, 2, **finite))
def test_fixed_point_conditions_fix_vertical_line(beta0, y0, r0):
    zeta = 1j
    b, r = fixed_point_conditions(zeta, beta0)
    z = HoroPoint(y0, beta0, r0)
    assert act_parabolic(ParabolicParams(1, zeta, b, r), z).distance(z) <= 1e-9
    assert act(gamma_of_beta0(beta0), z).distance(z) <= 1e-9


def test_gamma_of_beta0_displays():
    assert np.allclose(gamma_of_beta0(0), GENERATORS["epsilon"].to_numpy())
    assert np.allclose(gamma_of_beta0(1j), word("xi^2").to_numpy())
    assert GMatrix.from_numpy(gamma_of_beta0(1j)) == GMatrix.of([[1j, 1 - 1j, -1 + 1j], [0, -1, 1 + 1j], [0, 0, 1j]])
    # at (1+i)/2 only the square is integral
    g = gamma_of_beta0((1 + 1j) / 2)
    assert not np.allclose(g, np.round(g.real) + 1j * np.round(g.imag))
    assert np.allclose(g @ g, word("sigma eps^2").to_numpy())


@pytest.mark.parametrize("beta0", list(PARABOLIC_ISOTROPY))
def test_isotropy_generator_matches_display(beta0):
    assert isotropy_generator(beta0) == PARABOLIC_ISOTROPY[beta0]


def test_isotropy_generator_generic_point():
    assert isotropy_generator(0.3 + 0.1j) is None


@pytest.mark.parametrize(
    "z, want, w",
    [((1, 0, 0), (1, 0, 0), ""), ((1, 1, 0), (1, 1j, 0), "eps eps eps"), ((1, 0, 7 / 3), (1, 0, 1 / 3), "tau~ tau~")],
)
def test_siegel_examples(z, want, w):
    zr, word_ = siegel_reduce(HoroPoint(*z))
    assert zr.isclose(HoroPoint(*want), 1e-12)
    assert str(word_) == w


@pytest.mark.parametrize(
    "z, want",
    [((1, 0, 0), True), ((1, 1j, 0.5), True), ((1, 1, 0), False), ((1, 0, -0.5), False), ((1, 0.25 + 0.5j, 0.1), True)],
)
def test_in_siegel_strip(z, want):
    assert in_siegel_strip(HoroPoint(*z)) is want


def test_diamond_boundary_convention():
    # vertices 0, i, (1+i)/2 in; (-1+i)/2 out
    assert in_diamond(0) and in_diamond(1j) and in_diamond((1 + 1j) / 2)
    assert not in_diamond((-1 + 1j) / 2)
    # edges from (1+i)/2 in, edges to (-1+i)/2 out (except endpoints)
    assert in_diamond(0.25 + 0.25j) and in_diamond(0.25 + 0.75j)
    assert not in_diamond(-0.25 + 0.25j) and not in_diamond(-0.25 + 0.75j)
    # the excluded edges are quarter-turn images of the included ones
    for b in (0.25 + 0.25j, 0.1 + 0.1j):
        assert not in_diamond(1j * b)
    for b in (0.25 + 0.75j, 0.4 + 0.6j):
        assert not in_diamond(1j + 1j * (b - 1j))


@given(points(y=(0.1, 5.0), b=6.0, r=20.0))
def test_siegel_reduce_property(z):
    zr, w = siegel_reduce(z)
    assert in_siegel_strip(zr)
    assert zr.y == z.y
    assert act(w.matrix(), z).distance(zr) <= 1e-9


@given(points(b=0.7, r=0.49))
def test_siegel_reduce_idempotent(z):
    zr, _ = siegel_reduce(z)
    zz, w = siegel_reduce(zr)
    assert zz.isclose(zr, 1e-9)


def test_siegel_word_parse_and_matrix():
    w = SiegelWord.parse("tau sigma~ eps")
    assert str(w) == "tau sigma~ eps"
    assert w.matrix() == word("tau sigma~ eps")
    with pytest.raises(ValueError):
        SiegelWord.parse("tau w")
