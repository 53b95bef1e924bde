"""Hot numeric kernels with two interchangeable backends.

The loop-style kernels below are compiled with numba's ``@njit`` when numba
is importable and ``NETINFER_NO_NUMBA`` is unset.  Setting
``NETINFER_NO_NUMBA=1`` selects the pure-numpy fallbacks instead, which
implement the same algorithms with vectorised array operations.  Both
backends make bit-identical decisions: tie-breaking uses an explicit 31-bit
linear congruential generator (glibc constants a=1103515245, c=12345,
mod 2^31) driven by plain integer arithmetic so that compiled and fallback
paths draw the same stream.  ``benchmarks/bench_kernels.py`` compares the
two backends; ``tests/test_kernels.py`` checks they agree.

Conventions shared by every kernel:
  * ``entries``  -- (m, n) int8 matrix over {-1, +1}; +1 marks membership in
                    the row's matching set.
  * ``changed``  -- (m,) bool vector of oracle predictions.
  * ``mask``     -- (n,) bool vector selecting a candidate influencer set F.
  * margins are int64 row sums of ``entries`` restricted to F.

Protocol kind codes: 0 = tau-margin, 1 = all-but-kappa.
"""

from __future__ import annotations

import os

import numpy as np

KIND_TAU_MARGIN = 0
KIND_ALL_BUT_K = 1

_LCG_A = 1103515245
_LCG_C = 12345
_LCG_MOD = 2147483648  # 2^31

_flag = os.environ.get("NETINFER_NO_NUMBA", "").strip().lower()
_numba_wanted = _flag in ("", "0", "false", "no")

if _numba_wanted:
    try:
        from numba import njit

        _HAVE_NUMBA = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        _HAVE_NUMBA = False
else:
    _HAVE_NUMBA = False

BACKEND = "numba" if _HAVE_NUMBA else "numpy"


# ---------------------------------------------------------------------------
# loop kernels (numba-compiled when the numba backend is active)
# ---------------------------------------------------------------------------

def _margins_loop(entries, mask):
    m, n = entries.shape
    out = np.zeros(m, dtype=np.int64)
    for k in range(m):
        acc = 0
        for j in range(n):
            if mask[j]:
                acc += entries[k, j]
        out[k] = acc
    return out


def _feasible_margins_loop(margins, changed, kind, thresh, size_f):
    m = margins.shape[0]
    if kind == 0:  # tau-margin: changed rows > tau, unchanged rows >= -tau
        for k in range(m):
            if changed[k]:
                if margins[k] <= thresh:
                    return False
            else:
                if margins[k] < -thresh:
                    return False
    else:  # all-but-kappa, translated to margins over the matching transform
        lo_changed = size_f - 2 * thresh
        lo_unchanged = 2 * (thresh + 1) - size_f
        for k in range(m):
            if changed[k]:
                if margins[k] < lo_changed:
                    return False
            else:
                if margins[k] < lo_unchanged:
                    return False
    return True


def _filters_pick_loop(entries, changed, margins, mask, tau, tied):
    # Multi-filter refinement among the tied agents (the argmax of the
    # primary rescue count; widening to the full complement can override the
    # greedy choice and lose the one-agent-short completeness guarantee).
    # Rows at margin tau+1 with a changed prediction are never counted: they
    # cannot absorb a non-matching agent, so rescuing them is vacuous.
    m, n = entries.shape
    alive = np.zeros(n, dtype=np.bool_)
    for j in range(n):
        if tied[j] and not mask[j]:
            alive[j] = True

    vals = np.empty(m, dtype=np.int64)
    n_vals = 0
    for k in range(m):
        v = margins[k]
        if v <= tau + 1:
            seen = False
            for t in range(n_vals):
                if vals[t] == v:
                    seen = True
                    break
            if not seen:
                vals[n_vals] = v
                n_vals += 1
    thresholds = np.sort(vals[:n_vals])[::-1]

    counts = np.zeros(n, dtype=np.int64)
    for t in range(n_vals):
        cut = thresholds[t]
        for j in range(n):
            counts[j] = 0
        for k in range(m):
            if margins[k] <= cut and not (margins[k] == tau + 1 and changed[k]):
                for j in range(n):
                    if alive[j] and entries[k, j] == 1:
                        counts[j] += 1
        best = -1
        for j in range(n):
            if alive[j] and (best == -1 or counts[j] > counts[best]):
                best = j
        n_alive = 0
        for j in range(n):
            if alive[j]:
                if counts[j] == counts[best]:
                    n_alive += 1
                else:
                    alive[j] = False
        if n_alive == 1:
            return best
    for j in range(n):
        if alive[j]:
            return j
    return -1


def _grow_loop(entries, changed, tau, mask, margins, additions, tie_mode, state):
    # Greedy growth: while some row is inconsistent, add the agent matching
    # the most rescue rows.  Mutates mask/margins/additions in place.
    # Returns (found, n_added, state).
    m, n = entries.shape
    size = 0
    for j in range(n):
        if mask[j]:
            size += 1
    n_added = 0
    while size < n:
        inconsistent = False
        for k in range(m):
            if changed[k]:
                if margins[k] <= tau:
                    inconsistent = True
                    break
            else:
                if margins[k] <= -tau - 1:
                    inconsistent = True
                    break
        if not inconsistent:
            return True, n_added, state

        counts = np.zeros(n, dtype=np.int64)
        for k in range(m):
            if changed[k]:
                needs_rescue = margins[k] <= tau + 1
            else:
                needs_rescue = margins[k] <= -tau
            if needs_rescue:
                for j in range(n):
                    if not mask[j] and entries[k, j] == 1:
                        counts[j] += 1
        best = -1
        for j in range(n):
            if not mask[j] and (best == -1 or counts[j] > counts[best]):
                best = j
        n_ties = 0
        for j in range(n):
            if not mask[j] and counts[j] == counts[best]:
                n_ties += 1
        pick = best
        if n_ties > 1:
            if tie_mode == 1:  # seeded uniform pick among the tied agents
                state = (_LCG_A * state + _LCG_C) % _LCG_MOD
                target = state % n_ties
                c = 0
                for j in range(n):
                    if not mask[j] and counts[j] == counts[best]:
                        if c == target:
                            pick = j
                            break
                        c += 1
            elif tie_mode == 2:
                tied = np.zeros(n, dtype=np.bool_)
                for j in range(n):
                    if not mask[j] and counts[j] == counts[best]:
                        tied[j] = True
                pick = _filters_pick_loop(entries, changed, margins, mask,
                                          tau, tied)
        mask[pick] = True
        additions[n_added] = pick
        n_added += 1
        size += 1
        for k in range(m):
            margins[k] += entries[k, pick]
    return False, n_added, state


def _waterfall_loop(entries, changed, tau, source_order, tie_mode, tie_seed,
                    init_mask, use_init):
    # Returns (found, accept_code, source, mask, additions, n_added) with
    # accept_code 0 = empty set, 1 = greedy growth, 2 = full agent set.
    m, n = entries.shape
    mask = np.zeros(n, dtype=np.bool_)
    margins = np.zeros(m, dtype=np.int64)
    additions = np.full(n, -1, dtype=np.int64)
    state = tie_seed % _LCG_MOD

    if use_init:
        for j in range(n):
            if init_mask[j]:
                mask[j] = True
        for k in range(m):
            acc = 0
            for j in range(n):
                if mask[j]:
                    acc += entries[k, j]
            margins[k] = acc
        found, n_added, state = _grow_loop(
            entries, changed, tau, mask, margins, additions, tie_mode, state)
        if found:
            return True, 1, -1, mask, additions, n_added
    else:
        if _feasible_margins_loop(margins, changed, 0, tau, 0):
            return True, 0, -1, mask, additions, 0
        for si in range(source_order.shape[0]):
            s = source_order[si]
            for j in range(n):
                mask[j] = False
            mask[s] = True
            for k in range(m):
                margins[k] = entries[k, s]
            found, n_added, state = _grow_loop(
                entries, changed, tau, mask, margins, additions, tie_mode, state)
            if found:
                return True, 1, s, mask, additions, n_added

    for j in range(n):
        mask[j] = True
    for k in range(m):
        acc = 0
        for j in range(n):
            acc += entries[k, j]
        margins[k] = acc
    if _feasible_margins_loop(margins, changed, 0, tau, n):
        return True, 2, -1, mask, additions, 0
    for j in range(n):
        mask[j] = False
    return False, -1, -1, mask, additions, 0


def _brute_loop(entries, changed, kind, thresh):
    # Feasibility flag for every subset of [n], encoded as bitmask index.
    m, n = entries.shape
    total = 1 << n
    out = np.zeros(total, dtype=np.bool_)
    for msk in range(total):
        size_f = 0
        for j in range(n):
            if (msk >> j) & 1:
                size_f += 1
        ok = True
        if kind == 0:
            for k in range(m):
                acc = 0
                for j in range(n):
                    if (msk >> j) & 1:
                        acc += entries[k, j]
                if changed[k]:
                    if acc <= thresh:
                        ok = False
                        break
                else:
                    if acc < -thresh:
                        ok = False
                        break
        else:
            lo_changed = size_f - 2 * thresh
            lo_unchanged = 2 * (thresh + 1) - size_f
            for k in range(m):
                acc = 0
                for j in range(n):
                    if (msk >> j) & 1:
                        acc += entries[k, j]
                if changed[k]:
                    if acc < lo_changed:
                        ok = False
                        break
                else:
                    if acc < lo_unchanged:
                        ok = False
                        break
        out[msk] = ok
    return out


if _HAVE_NUMBA:
    _margins_nb = njit(cache=True)(_margins_loop)
    _feasible_margins_nb = njit(cache=True)(_feasible_margins_loop)
    _filters_pick_nb = njit(cache=True)(_filters_pick_loop)
    # rebind so the jitted growth/waterfall kernels call jitted helpers
    _filters_pick_loop = _filters_pick_nb
    _feasible_margins_loop_py = _feasible_margins_loop
    _feasible_margins_loop = _feasible_margins_nb
    _grow_nb = njit(cache=True)(_grow_loop)
    _grow_loop = _grow_nb
    _waterfall_nb = njit(cache=True)(_waterfall_loop)
    _brute_nb = njit(cache=True)(_brute_loop)


# ---------------------------------------------------------------------------
# pure-numpy fallbacks
# ---------------------------------------------------------------------------

def _margins_np(entries, mask):
    if entries.shape[1] == 0 or not mask.any():
        return np.zeros(entries.shape[0], dtype=np.int64)
    return entries[:, mask].sum(axis=1, dtype=np.int64)


def _feasible_margins_np(margins, changed, kind, thresh, size_f):
    if kind == KIND_TAU_MARGIN:
        ok = np.where(changed, margins > thresh, margins >= -thresh)
    else:
        ok = np.where(changed,
                      margins >= size_f - 2 * thresh,
                      margins >= 2 * (thresh + 1) - size_f)
    return bool(ok.all())


def _filters_pick_np(entries, changed, margins, mask, tau, tied):
    alive = tied & ~mask
    positive = entries == 1
    thresholds = np.unique(margins[margins <= tau + 1])[::-1]
    barely = (margins == tau + 1) & changed
    for cut in thresholds:
        rows = (margins <= cut) & ~barely
        counts = positive[rows].sum(axis=0, dtype=np.int64)
        best = counts[alive].max()
        new_alive = alive & (counts == best)
        if new_alive.sum() == 1:
            return int(np.flatnonzero(new_alive)[0])
        alive = new_alive
    return int(np.flatnonzero(alive)[0])


def _grow_np(entries, changed, tau, mask, margins, additions, tie_mode, state,
             positive):
    n = entries.shape[1]
    size = int(mask.sum())
    n_added = 0
    while size < n:
        if not np.any(np.where(changed, margins <= tau, margins <= -tau - 1)):
            return True, n_added, state
        rescue = np.where(changed, margins <= tau + 1, margins <= -tau)
        counts = positive[rescue].sum(axis=0, dtype=np.int64)
        avail = ~mask
        best = counts[avail].max()
        ties = np.flatnonzero(avail & (counts == best))
        pick = int(ties[0])
        if len(ties) > 1:
            if tie_mode == 1:
                state = (_LCG_A * state + _LCG_C) % _LCG_MOD
                pick = int(ties[state % len(ties)])
            elif tie_mode == 2:
                tied_mask = np.zeros(entries.shape[1], dtype=np.bool_)
                tied_mask[ties] = True
                pick = _filters_pick_np(entries, changed, margins, mask, tau,
                                        tied_mask)
        mask[pick] = True
        additions[n_added] = pick
        n_added += 1
        size += 1
        margins += entries[:, pick]
    return False, n_added, state


def _waterfall_np(entries, changed, tau, source_order, tie_mode, tie_seed,
                  init_mask, use_init):
    m, n = entries.shape
    mask = np.zeros(n, dtype=np.bool_)
    margins = np.zeros(m, dtype=np.int64)
    additions = np.full(n, -1, dtype=np.int64)
    state = int(tie_seed) % _LCG_MOD
    positive = entries == 1

    if use_init:
        mask[:] = init_mask
        margins[:] = _margins_np(entries, mask)
        found, n_added, state = _grow_np(
            entries, changed, tau, mask, margins, additions, tie_mode, state,
            positive)
        if found:
            return True, 1, -1, mask, additions, n_added
    else:
        if _feasible_margins_np(margins, changed, 0, tau, 0):
            return True, 0, -1, mask, additions, 0
        for s in source_order:
            mask[:] = False
            mask[s] = True
            margins[:] = entries[:, s]
            found, n_added, state = _grow_np(
                entries, changed, tau, mask, margins, additions, tie_mode,
                state, positive)
            if found:
                return True, 1, int(s), mask, additions, n_added

    mask[:] = True
    margins = entries.sum(axis=1, dtype=np.int64)
    if _feasible_margins_np(margins, changed, 0, tau, n):
        return True, 2, -1, mask, additions, 0
    mask[:] = False
    return False, -1, -1, mask, additions, 0


def _brute_np(entries, changed, kind, thresh, chunk=1 << 14):
    m, n = entries.shape
    total = 1 << n
    out = np.empty(total, dtype=bool)
    ent_t = entries.T.astype(np.int64)
    shifts = np.arange(n, dtype=np.int64)
    for start in range(0, total, chunk):
        stop = min(start + chunk, total)
        masks = np.arange(start, stop, dtype=np.int64)
        bits = ((masks[:, None] >> shifts) & 1).astype(np.int64)
        margins = bits @ ent_t  # (chunk, m) row sums over each subset
        sizes = bits.sum(axis=1)
        if kind == KIND_TAU_MARGIN:
            ok = np.where(changed[None, :], margins > thresh,
                          margins >= -thresh)
        else:
            lo_c = (sizes - 2 * thresh)[:, None]
            lo_u = (2 * (thresh + 1) - sizes)[:, None]
            ok = np.where(changed[None, :], margins >= lo_c, margins >= lo_u)
        out[start:stop] = ok.all(axis=1)
    return out


# ---------------------------------------------------------------------------
# dispatchers
# ---------------------------------------------------------------------------

if _HAVE_NUMBA:
    def margins_for_mask(entries, mask):
        return _margins_nb(entries, mask)

    def feasible_margins(margins, changed, kind, thresh, size_f):
        return _feasible_margins_nb(margins, changed, kind, thresh, size_f)

    def waterfall_run(entries, changed, tau, source_order, tie_mode, tie_seed,
                      init_mask, use_init):
        return _waterfall_nb(entries, changed, tau, source_order, tie_mode,
                             tie_seed, init_mask, use_init)

    def brute_feasible(entries, changed, kind, thresh):
        return _brute_nb(entries, changed, kind, thresh)
else:
    margins_for_mask = _margins_np
    feasible_margins = _feasible_margins_np
    waterfall_run = _waterfall_np
    brute_feasible = _brute_np


def warmup():
    """Trigger JIT compilation on tiny inputs so timings exclude it."""
    entries = np.array([[1, -1], [-1, 1]], dtype=np.int8)
    changed = np.array([True, False])
    mask = np.array([True, False])
    margins_for_mask(entries, mask)
    feasible_margins(np.zeros(2, dtype=np.int64), changed, 0, 0, 0)
    for mode in (0, 1, 2):
        waterfall_run(entries, changed, 0, np.arange(2, dtype=np.int64),
                      mode, 7, mask, False)
    waterfall_run(entries, changed, 0, np.arange(2, dtype=np.int64),
                  0, 7, mask, True)
    brute_feasible(entries, changed, 0, 0)
    brute_feasible(entries, changed, 1, 1)
