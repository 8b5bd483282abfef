from fractions import Fraction

import pytest
from hypothesis import strategies as st

from quartic_lab.arith import NVARS, MultiPoly


small_fractions = st.builds(
    Fraction, st.integers(min_value=-9, max_value=9), st.integers(min_value=1, max_value=5)
)

# exponent vectors over (x, a, m, u); l stays zero
exponents = st.tuples(*[st.integers(0, 3)] * 4).map(lambda e: e + (0,) * (NVARS - 4))

polys = st.dictionaries(exponents, small_fractions, max_size=5).map(MultiPoly)

nonzero_polys = polys.filter(lambda p: not p.is_zero())


@pytest.fixture
def report(capsys, request):
    """One PASS/FAIL line per acceptance criterion, printed even when output is captured."""

    def emit(ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {request.node.name}: {detail}")

    return emit
