from fractions import Fraction

from hypothesis import strategies as st

from ccf.quaternion import Quat
from ccf.scalar import ScalarQ

small = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 12))


@st.composite
def scalars(draw, nonzero=False):
    x = ScalarQ(draw(small), draw(small))
    if nonzero and not x:
        x = ScalarQ(1)
    return x


@st.composite
def quats(draw, nonzero=False):
    q = Quat(*(draw(scalars()) for _ in range(4)))
    if nonzero and not q:
        q = Quat(ScalarQ(Fraction(1, 3)))
    return q


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if not mod or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
