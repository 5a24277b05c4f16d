import itertools
import os

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from dp3castles.contour import is_self_intersecting, tuple_for_point
from dp3castles.poly import NVARS, LaurentPoly

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=400, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def cube(r):
    return sorted(itertools.product(range(-r, r + 1), repeat=3))


def simple_points(r):
    """Points of the cube of radius r whose contour is a simple closed path."""
    return [p for p in cube(r) if not is_self_intersecting(tuple_for_point(*p))]


# small Laurent polynomials over x1..x3, y1 so that products stay cheap
_VARS = (0, 1, 2, 6)


def _mono(exps):
    e = [0] * NVARS
    for v, p in zip(_VARS, exps):
        e[v] = p
    return tuple(e)


monomials = st.tuples(*[st.integers(-3, 3) for _ in _VARS]).map(_mono)
laurent = st.dictionaries(monomials, st.integers(-5, 5), max_size=5).map(LaurentPoly)
nonzero_laurent = laurent.filter(bool)
