from fractions import Fraction

from hypothesis import strategies as st

from reptile.exactfield import QuadVal

rats = st.builds(Fraction, st.integers(-50, 50), st.integers(1, 30))
radicands = st.sampled_from([2, 3, 5, 6, 7])


def quadvals(d):
    return st.builds(lambda u, v: QuadVal(u, v, d), rats, rats)


@st.composite
def quad_triples(draw):
    d = draw(radicands)
    q = quadvals(d)
    return draw(q), draw(q), draw(q)
