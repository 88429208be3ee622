from fractions import Fraction

from hypothesis import strategies as st

from awdelta.scalar import GaussianRational, gr

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def gaussian(draw, nonzero=False):
    re_ = draw(rationals)
    im = draw(st.one_of(st.just(Fraction(0)), rationals))
    v = GaussianRational(re_, im)
    if nonzero and not v:
        v = gr(1)
    return v


@st.composite
def deformation(draw):
    """A nonzero scalar that is not a root of unity and has q^4 != 1."""
    v = draw(gaussian(nonzero=True))
    if v.norm() == 1:
        v = v * 2
    return v


def S(text):
    return gr(text)
