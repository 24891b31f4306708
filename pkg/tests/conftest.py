import sys
from fractions import Fraction

from hypothesis import settings, strategies as st

from symfueter.exactnum import GaussianRational
from symfueter.polyspinor import SymplecticPolynomial

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

small_ints = st.integers(-6, 6)
fractions = st.builds(Fraction, small_ints, st.integers(1, 5))
gaussians = st.builds(GaussianRational, fractions, fractions)


@st.composite
def polynomials(draw, n=1, max_terms=4, max_exp=2):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        key = tuple(draw(st.integers(0, max_exp)) for _ in range(3 * n))
        terms[key] = draw(gaussians)
    return SymplecticPolynomial(n, terms)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    results = module.RESULTS
    terminalreporter.section("acceptance criteria")
    for label in sorted(results, key=lambda s: int(s.split()[0][2:])):
        terminalreporter.write_line(f"{'PASS' if results[label] else 'FAIL'}  {label}")
