import itertools

import numpy as np
import pytest
from hypothesis import given

from picard.gaussian import GaussInt, GaussVec3
from picard.group import (
    FORM,
    GENERATORS,
    IDENTITY,
    GMatrix,
    enumerate_gamma,
    form_q,
    generator,
    is_gamma_member,
    mat_inv,
    mat_mul,
    mat_order,
    parse_element,
    parse_word,
    word,
)
from strategies import words

E1, E2, E3 = GaussVec3.of(1, 0, 0), GaussVec3.of(0, 1, 0), GaussVec3.of(0, 0, 1)


def M(rows):
    return GMatrix.of(rows)


def test_form_q_examples():
    assert form_q(E1, E1) == GaussInt(0, 0)
    assert form_q(E2, E2) == GaussInt(-1, 0)
    assert form_q(E1, E3) == GaussInt(0, 1)


def test_form_spectrum():
    evals = np.linalg.eigvalsh(FORM.to_numpy())
    assert np.allclose(sorted(evals), [-1, -1, 1])


@pytest.mark.parametrize("name", sorted(GENERATORS))
def test_generators_in_gamma(name):
    g = GENERATORS[name]
    assert g.det() == GaussInt(1, 0)
    assert g.star() @ FORM @ g == FORM
    assert is_gamma_member(g)


def test_membership_examples():
    assert is_gamma_member(IDENTITY)
    assert not is_gamma_member(M([[2, 0, 0], [0, 1, 0], [0, 0, 1]]))
    # det 1 but does not preserve the form
    assert not is_gamma_member(M([[1, 1, 0], [0, 1, 0], [0, 0, 1]]))


def test_generator_displays():
    assert generator("w") == M([[0, 0, -1], [0, 1, 0], [1, 0, 0]])
    assert generator("eps") == M([[1j, 0, 0], [0, -1, 0], [0, 0, 1j]])
    assert generator("xi") == M([[1, -1 - 1j, 1j], [1 - 1j, -1, 0], [1 - 1j, -1 - 1j, 1j]])
    with pytest.raises(ValueError):
        generator("nope")


def test_mul_inv_examples():
    tau = GENERATORS["tau"]
    assert mat_mul(IDENTITY, tau) == tau
    assert mat_inv(tau) == M([[1, 0, -1], [0, 1, 0], [0, 0, 1]])
    assert word("eps w") == M([[0, 0, -1j], [0, -1, 0], [1j, 0, 0]])


@pytest.mark.parametrize("text, order", [("eps", 4), ("xi", 8), ("tau eps w", 12), ("eps w", 2), ("tau", None)])
def test_mat_order(text, order):
    assert mat_order(word(text), 20) == order


def test_matrix_parse_roundtrip():
    g = GENERATORS["xi"]
    assert GMatrix.parse(str(g)) == g
    assert parse_element(str(g)) == g
    assert parse_element("xi") == g


@pytest.mark.parametrize(
    "bad, where",
    [("1,0,0;0,1,0", "three"), ("1,0,0;0,1;0,0,1", "row 2"), ("1,0,0;0,1,0;0,0,x", r"entry \(3,3\)")],
)
def test_matrix_parse_errors_carry_location(bad, where):
    with pytest.raises(ValueError, match=where):
        GMatrix.parse(bad)


def test_word_syntax():
    assert parse_word("tau.eps^2.w~") == [("tau", 1), ("epsilon", 2), ("w", -1)]
    assert word("tau^-1") == word("tau~") == mat_inv(GENERATORS["tau"])
    assert word("id") == word("") == IDENTITY
    with pytest.raises(ValueError, match="token 2"):
        parse_word("tau bogus")


@given(words())
def test_words_stay_in_gamma(wg):
    _, g = wg
    assert is_gamma_member(g)
    assert g @ g.inv() == IDENTITY
    # g^-1 = C g* C
    assert g.inv() == FORM @ g.star() @ FORM


@given(words(), words())
def test_det_multiplicative(a, b):
    assert (a[1] @ b[1]).det() == a[1].det() * b[1].det()


def test_enumerate_gamma_small():
    els = enumerate_gamma(1)
    s = set(els)
    for name in ("w", "tau", "epsilon"):
        assert GENERATORS[name] in s
    assert all(is_gamma_member(g) and g.max_norm() <= 1 for g in els)
    assert all(g.inv() in s for g in els)
    assert els == sorted(els, key=GMatrix.key)


def test_enumerate_gamma_contains_short_products():
    s = set(enumerate_gamma(2))
    for text in ("sigma", "sigma_check", "xi", "eps w", "xi^2", "sigma eps^2"):
        g = word(text)
        assert g.max_norm() <= 2 and g in s


def test_enumerate_gamma_brute_force_bound1():
    # independent oracle: columns with entries in {0, +-1, +-i} whose Gram
    # matrix under Q is C, then det = 1
    vals = [0, 1, -1, 1j, -1j]
    vecs = [np.array(v, dtype=complex) for v in itertools.product(vals, repeat=3)]
    form = FORM.to_numpy()

    def q(u, v):
        return complex(np.conj(u) @ form @ v)

    count = 0
    for c1, c3 in itertools.product(vecs, repeat=2):
        if q(c1, c1) != 0 or q(c3, c3) != 0 or q(c1, c3) != 1j:
            continue
        for c2 in vecs:
            if q(c2, c2) == -1 and q(c1, c2) == 0 and q(c2, c3) == 0:
                if abs(np.linalg.det(np.stack([c1, c2, c3], axis=1)) - 1) < 1e-9:
                    count += 1
    assert count == len(enumerate_gamma(1))
