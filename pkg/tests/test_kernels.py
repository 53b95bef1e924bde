"""Backend parity: the numba kernels and numpy fallbacks must make
bit-identical decisions, including tie-break draws."""

import numpy as np
import pytest

from netinfer import _kernels

needs_numba = pytest.mark.skipif(not _kernels._HAVE_NUMBA,
                                 reason="numba backend not active")


def _instances(count, seed, n_max=9, m_max=8):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        n = int(rng.integers(1, n_max + 1))
        m = int(rng.integers(0, m_max + 1))
        entries = rng.integers(0, 2, size=(m, n), dtype=np.int8) * 2 - 1
        changed = rng.random(m) < 0.5
        yield entries, changed, rng


@needs_numba
class TestParity:
    def test_margins(self):
        for entries, changed, rng in _instances(100, 1):
            mask = rng.random(entries.shape[1]) < 0.5
            a = _kernels._margins_nb(entries, mask)
            b = _kernels._margins_np(entries, mask)
            assert (a == b).all()

    def test_feasibility(self):
        for entries, changed, rng in _instances(150, 2):
            mask = rng.random(entries.shape[1]) < 0.5
            margins = _kernels._margins_np(entries, mask)
            size = int(mask.sum())
            for kind in (0, 1):
                for thresh in (0, 1, 2):
                    a = _kernels._feasible_margins_nb(margins, changed, kind,
                                                      thresh, size)
                    b = _kernels._feasible_margins_np(margins, changed, kind,
                                                      thresh, size)
                    assert bool(a) == bool(b)

    def test_waterfall_runs(self):
        for entries, changed, rng in _instances(200, 3):
            n = entries.shape[1]
            order = np.arange(n, dtype=np.int64)
            seed = int(rng.integers(0, 2**31))
            for tie_mode in (0, 1, 2):
                for tau in (0, 1):
                    a = _kernels._waterfall_nb(entries, changed, tau, order,
                                               tie_mode, seed,
                                               np.zeros(n, dtype=np.bool_),
                                               False)
                    b = _kernels._waterfall_np(entries, changed, tau, order,
                                               tie_mode, seed,
                                               np.zeros(n, dtype=np.bool_),
                                               False)
                    assert a[0] == b[0] and a[1] == b[1] and a[2] == b[2]
                    assert (a[3] == b[3]).all()
                    assert a[5] == b[5]
                    assert (a[4][:a[5]] == b[4][:b[5]]).all()

    def test_waterfall_from_initial(self):
        for entries, changed, rng in _instances(100, 4):
            n = entries.shape[1]
            init = rng.random(n) < 0.4
            order = np.arange(n, dtype=np.int64)
            a = _kernels._waterfall_nb(entries, changed, 0, order, 2, 11,
                                       init, True)
            b = _kernels._waterfall_np(entries, changed, 0, order, 2, 11,
                                       init, True)
            assert a[0] == b[0] and (a[3] == b[3]).all()

    def test_brute_force(self):
        for entries, changed, rng in _instances(60, 5, n_max=8, m_max=6):
            for kind, thresh in ((0, 0), (0, 1), (1, 0), (1, 2)):
                a = _kernels._brute_nb(entries, changed, kind, thresh)
                b = _kernels._brute_np(entries, changed, kind, thresh)
                assert (a == b).all()
