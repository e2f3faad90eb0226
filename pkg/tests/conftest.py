from fractions import Fraction

from hypothesis import strategies as st

# positive rationals with small height, shared by several modules
unit_rationals = st.fractions(min_value=Fraction(1, 50), max_value=Fraction(49, 50), max_denominator=60)
pos_rationals = st.fractions(min_value=Fraction(1, 40), max_value=Fraction(20), max_denominator=40)


def pytest_terminal_summary(terminalreporter):
    # acceptance criteria print one line each; repeat them after the run
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
