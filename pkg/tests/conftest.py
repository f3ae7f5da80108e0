from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from starmult.poly import Poly
from starmult.scalar import cq

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

rationals = st.fractions(min_value=-6, max_value=6, max_denominator=4)
complexes = st.builds(cq, rationals, rationals)


def scalars(field="real"):
    return rationals if field == "real" else complexes


@st.composite
def polys(draw, vars=("x", "y", "z"), max_degree=3, max_terms=5, field=None):
    field = field or draw(st.sampled_from(["real", "complex"]))
    n = len(vars)
    exps = st.lists(st.integers(0, max_degree), min_size=n, max_size=n).map(tuple)
    terms = draw(st.dictionaries(exps, scalars(field), max_size=max_terms))
    return Poly(vars, terms, field)


def F(x):
    return Fraction(x)
