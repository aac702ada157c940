"""The fast Kloosterman row kernels against direct enumeration."""

import math

import numpy as np
import pytest

from qcbounds.arith import kloosterman_direct
from qcbounds.kernels import kloosterman_row, series_kloosterman

ROW_CASES = [(1, 12), (3, 35), (0, 8), (2, 49), (5, 121), (4, 1), (9, 27), (7, 100)]

# (m, p, N, t): exercises a = 1, Salie even/odd powers, p | t recursions
# and the CRT twist against the small cofactor.
SERIES_CASES = [
    (1, 7, 49, 1), (1, 7, 49, 2), (1, 7, 49, 6), (1, 7, 49, 7), (1, 7, 49, 14),
    (1, 7, 49, 49), (1, 7, 7, 1), (1, 7, 7, 4), (1, 7, 7, 7), (1, 7, 7, 21),
    (7, 7, 7, 1), (7, 7, 7, 2), (7, 7, 7, 7), (7, 7, 7, 14), (7, 7, 7, 49),
    (1, 11, 121, 3), (11, 11, 11, 11), (1, 5, 25, 10), (1, 3, 9, 6),
    (5, 5, 5, 15), (1, 13, 169, 5), (13, 13, 13, 26), (1, 17, 17, 12),
]


@pytest.mark.parametrize("m,c", ROW_CASES)
def test_row_matches_direct(m, c):
    row = kloosterman_row(m, c)
    for n in range(c):
        assert row[n] == pytest.approx(kloosterman_direct(m, n, c), abs=1e-9)


@pytest.mark.parametrize("m,p,N,t", SERIES_CASES)
def test_series_rows_match_direct(m, p, N, t):
    c = t * N
    n = np.arange(1, 81, dtype=np.int64)
    row = series_kloosterman(m, p, N, t, n)
    tol = 1e-8 * max(1.0, math.sqrt(c))
    for i, nn in enumerate(n):
        assert abs(row[i] - kloosterman_direct(m, int(nn), c)) < tol
