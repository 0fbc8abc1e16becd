"""Hypothesis strategies shared by the test modules."""

import hypothesis.strategies as st

from picard.gaussian import GaussInt
from picard.group import GENERATORS, IDENTITY
from picard.horo import HoroPoint

small_ints = st.integers(-30, 30)
gauss = st.builds(GaussInt, small_ints, small_ints)
nonzero_gauss = gauss.filter(lambda z: bool(z))

finite = dict(allow_nan=False, allow_infinity=False, allow_subnormal=False)


@st.composite
def points(draw, y=(0.2, 3.0), b=2.0, r=3.0):
    yy = draw(st.floats(*y, **finite))
    br = draw(st.floats(-b, b, **finite))
    bi = draw(st.floats(-b, b, **finite))
    rr = draw(st.floats(-r, r, **finite))
    return HoroPoint(yy, complex(br, bi), rr)


@st.composite
def words(draw, max_len=6):
    names = draw(st.lists(st.sampled_from(sorted(GENERATORS)), max_size=max_len))
    g = IDENTITY
    toks = []
    for name in names:
        k = draw(st.sampled_from((1, -1)))
        g = g @ GENERATORS[name] ** k
        toks.append(name if k == 1 else name + "~")
    return " ".join(toks) or "id", g
