import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from picard.catalog import FIRST_CONTACT, FIXED_POINTS
from picard.exhaustion import (
    NAMED_FAMILY_WORDS,
    P0,
    ConvergenceError,
    ParabolicRep,
    admissibility_clause,
    apply_gamma,
    argmax_parabolics,
    cusp_to_infinity,
    enumerate_isotropic,
    f_exhaustion,
    first_contact,
    format_family,
    in_spine,
    is_strongly_admissible,
    max_height,
    named_family,
    pairing_norm,
    parabolics_above,
    parse_family,
    reduce_point,
)
from picard.group import FORM_NP, GENERATORS, IDENTITY, word
from picard.horo import HoroPoint, act, horo_to_vector, in_siegel_strip
from strategies import points, words

D5, D6, D7, D8, D9 = (FIXED_POINTS[f"Gamma_{k}"][0] for k in range(5, 10))
CUSPS = [P for h in (1, 2, 3, 4, 5) for P in enumerate_isotropic(h)]


def R(*v):
    return ParabolicRep.of(*v)


def f_oracle(P, z):
    # f_P(z) = y / |Q(v_P, v(z))| with v(z) normalized to third coordinate 1
    vp = np.array([complex(x) for x in P.v])
    return z.y / abs(np.conj(vp) @ FORM_NP @ horo_to_vector(z))


def test_rep_validation():
    with pytest.raises(ValueError, match="isotropic"):
        R(1, 1, 0)
    with pytest.raises(ValueError, match="primitive"):
        R(2, 0, 0)
    assert R(-1, 0, 0) == P0
    assert R(1j, 0, 1j) == R(1, 0, 1)


@given(points())
def test_f_p0_is_y(z):
    assert f_exhaustion(P0, z) == pytest.approx(z.y, rel=1e-14)


def test_f_examples():
    assert f_exhaustion(R(0, 0, 1), HoroPoint(1, 0, 0)) == pytest.approx(1, abs=1e-15)
    assert f_exhaustion(R(1, 0, 1), D5) == pytest.approx((3 / 4) ** 0.25, abs=1e-15)


@given(points(), st.sampled_from(CUSPS))
def test_f_matches_pairing_oracle(z, P):
    assert f_exhaustion(P, z) == pytest.approx(f_oracle(P, z), rel=1e-10)


@given(points(y=(0.5, 2.0), b=1.0, r=1.0), st.sampled_from(CUSPS[:60]), words())
def test_f_gamma_invariance(z, P, wg):
    _, g = wg
    assert abs(f_exhaustion(apply_gamma(g, P), act(g, z)) - f_exhaustion(P, z)) <= 1e-9


def test_apply_gamma_examples():
    assert apply_gamma(GENERATORS["w"], P0) == R(0, 0, 1)
    assert apply_gamma(GENERATORS["tau"], R(0, 0, 1)) == R(1, 0, 1)
    assert apply_gamma(IDENTITY, R(1, 0, 1)) == R(1, 0, 1)


def test_pairing_norm_examples():
    assert pairing_norm(P0, R(0, 0, 1)) == 1
    assert pairing_norm(P0, R(1, 0, 1)) == 1
    for P in CUSPS[:20]:
        assert pairing_norm(P, P) == 0


def _naive_isotropic_count(h):
    # complex arithmetic, divisor brute force, explicit unit orbits
    m = int(math.isqrt(h)) + 1
    gs = [complex(a, b) for a in range(-m, m + 1) for b in range(-m, m + 1) if a * a + b * b <= h]
    divs = [d for d in gs if abs(d) ** 2 > 1]

    def divides(d, x):
        t = x / d
        return abs(t.real - round(t.real)) < 1e-9 and abs(t.imag - round(t.imag)) < 1e-9

    seen = set()
    for v in itertools.product(gs, repeat=3):
        if not any(v):
            continue
        n, p, q = v
        if abs(n.conjugate() * 1j * q - abs(p) ** 2 - q.conjugate() * 1j * n) > 1e-9:
            continue
        if any(all(divides(d, x) for x in v) for d in divs):
            continue
        seen.add(frozenset(tuple(u * x for x in v) for u in (1, 1j, -1, -1j)))
    return len(seen)


@pytest.mark.parametrize("h, count", [(1, 4), (2, 24), (4, 36)])
def test_enumerate_isotropic_against_naive_scan(h, count):
    assert _naive_isotropic_count(h) == count
    assert len(enumerate_isotropic(h)) == count


def test_enumerate_isotropic_contents():
    h1 = set(enumerate_isotropic(1))
    assert {P0, R(0, 0, 1), R(1, 0, 1)} <= h1
    for P in enumerate_isotropic(4):
        n, p, q = P.v
        assert p.norm() == 2 * (n * q.conj()).im
        assert max(x.norm() for x in P.v) <= 4


@pytest.mark.parametrize("name", sorted(NAMED_FAMILY_WORDS))
def test_named_families_admissible(name):
    fam = named_family(name)
    assert is_strongly_admissible(fam)
    assert admissibility_clause(fam) == (2 if name == "I8" else 1)


def test_I8_shape():
    fam = named_family("I8")
    assert len(set(fam)) == 8
    assert max(pairing_norm(a, b) for a in fam for b in fam) <= 4


def test_five_clique_is_clause_one():
    # largest family with pairwise norms <= 2 among cusps of height <= 8
    fam = [P0, R(0, 0, 1), R(1, 0, -1), R(1, -1 - 1j, -1 - 1j), R(1 + 1j, 1 - 1j, -1j)]
    assert max(pairing_norm(a, b) for a in fam for b in fam) <= 2
    assert admissibility_clause(fam) == 1


def test_six_element_family_rejected():
    # no six cusps have pairwise norms <= 2, so take six members of I8 (norms <= 4)
    fam = named_family("I8")[:6]
    assert len(set(fam)) == 6
    assert max(pairing_norm(a, b) for a in fam for b in fam) <= 4
    assert not is_strongly_admissible(fam)
    assert not is_strongly_admissible([P0, R(1j, 2, 2)])  # pairing norm 4 with only two members


def test_argmax_examples():
    assert argmax_parabolics(HoroPoint(2, 0, 0)) == (P0,)
    top = set(argmax_parabolics(D6))
    assert {P0, R(0, 0, 1)} <= top
    top = set(argmax_parabolics(D5, 1e-9))
    assert {P0, R(0, 0, 1), R(1, 0, 1)} <= top
    vals = [f_exhaustion(P, D5) for P in top]
    assert max(vals) - min(vals) < 1e-12


@pytest.mark.parametrize(
    "z, want", [(HoroPoint(2, 0, 0), False), (D6, True), (D9, True), (D5, True), (D7, True), (D8, True)]
)
def test_in_spine(z, want):
    assert in_spine(z, 1e-6) is want


@given(points(y=(0.4, 2.0), b=1.0, r=0.5))
def test_parabolics_above_complete(z):
    # every cusp of height <= 5 above the threshold must be reported
    t = 0.5 * max_height(z)
    found = {P for P, _ in parabolics_above(z, t)}
    for P in CUSPS:
        if f_exhaustion(P, z) > t * (1 + 1e-12):
            assert P in found


@pytest.mark.parametrize("name", sorted(FIRST_CONTACT))
def test_first_contact(name):
    fam = named_family(name)
    z = first_contact(fam)
    assert z.distance(FIRST_CONTACT[name]) <= 1e-6
    vals = [f_exhaustion(P, z) for P in fam]
    assert max(vals) - min(vals) <= 1e-6


def test_first_contact_rejects_inadmissible():
    with pytest.raises(ValueError):
        first_contact([P0, R(1j, 2, 2)])


def test_first_contact_budget_exhausted():
    with pytest.raises(ConvergenceError):
        first_contact(named_family("I8"), budget=20)


def test_parse_family_roundtrip_and_errors():
    fam = named_family("I3_1")
    assert parse_family(format_family(fam)) == fam
    assert parse_family("# comment\n1,0,0\n\n0,0,1  # w\n") == (P0, R(0, 0, 1))
    with pytest.raises(ValueError, match="line 2"):
        parse_family("1,0,0\n1,1,0\n")
    with pytest.raises(ValueError, match="line 1"):
        parse_family("1,0\n")
    with pytest.raises(ValueError):
        parse_family("# nothing\n")


@pytest.mark.parametrize("P", CUSPS[::7])
def test_cusp_to_infinity(P):
    g = cusp_to_infinity(P)
    assert apply_gamma(g, P) == P0


@given(points(y=(0.05, 2.0), b=3.0, r=5.0))
def test_reduce_point(z):
    zr, g = reduce_point(z)
    assert act(g, z).distance(zr) <= 1e-8
    assert in_siegel_strip(zr, 1e-8)
    assert P0 in argmax_parabolics(zr, 1e-8)
