"""Pure-Python/numpy kernel implementations.

Reference semantics for the compiled twins in ``_ckernels.pyx``: every
function here must stay behaviourally identical to its Cython counterpart
(same transcripts and integer counts; float scores equal up to summation
order).
"""

from __future__ import annotations

import math

import numpy as np

NEG_INF = -math.inf


# ----------------------------------------------------------------------
# Levenshtein with canonical breakdown
# ----------------------------------------------------------------------


def edit_ops(ref_ids: np.ndarray, hyp_ids: np.ndarray) -> tuple[int, int, int]:
    """Minimum-edit breakdown between two id sequences.

    Returns ``(substitutions, insertions, deletions)`` for an edit script of
    minimum total length; among minimum scripts the one with the most
    substitutions (equivalently, fewest insertions+deletions) is chosen,
    which makes the breakdown unique and symmetric under argument swap.

    Implemented as a two-row DP over a combined cost
    ``dist * BIG + (ins + dels)`` with ``BIG > len(ref) + len(hyp)`` so a
    single integer minimisation realises the lexicographic objective.
    """
    ref = np.asarray(ref_ids, dtype=np.int64)
    hyp = np.asarray(hyp_ids, dtype=np.int64)
    n, m = len(ref), len(hyp)
    if n == 0:
        return 0, m, 0
    if m == 0:
        return 0, 0, n

    big = np.int64(n + m + 1)
    indel = big + 1
    j_step = np.arange(m + 1, dtype=np.int64) * indel

    prev = j_step.copy()
    t = np.empty(m + 1, dtype=np.int64)
    for i in range(1, n + 1):
        sub_cost = np.where(hyp == ref[i - 1], 0, big)
        t[0] = i * indel
        np.minimum(prev[:-1] + sub_cost, prev[1:] + indel, out=t[1:])
        # insertion is a prefix-scan: cur[j] = min_{k<=j} t[k] + (j-k)*indel
        prev = np.minimum.accumulate(t - j_step) + j_step

    cost = int(prev[m])
    big = int(big)
    dist = cost // big
    idc = cost % big
    ins = (idc + m - n) // 2
    dels = (idc - m + n) // 2
    return dist - idc, ins, dels


# ----------------------------------------------------------------------
# Windowed-sinc resampler
# ----------------------------------------------------------------------


def sinc_resample(
    x: np.ndarray,
    ratio: float,
    n_out: int,
    interp_win: np.ndarray,
    interp_delta: np.ndarray,
    precision: int,
) -> np.ndarray:
    """Resample ``x`` by ``ratio`` (output rate / input rate).

    ``interp_win`` is the right half of a symmetric windowed-sinc filter
    sampled at ``precision`` points per zero crossing, ``interp_delta`` its
    forward differences (for linear interpolation between table entries).
    When downsampling the filter is time-scaled by ``ratio`` (anti-aliasing
    low-pass at ``ratio * Nyquist``) and gain-compensated by the same factor.
    """
    x = np.asarray(x, dtype=np.float64)
    n_in = len(x)
    out = np.zeros(n_out, dtype=np.float64)
    if n_in == 0 or n_out == 0:
        return out

    scale = min(1.0, ratio)
    win = interp_win * scale if scale < 1.0 else interp_win
    delta = interp_delta * scale if scale < 1.0 else interp_delta
    nwin = len(win)
    index_step = int(scale * precision)

    chunk = 1 << 15
    n_taps = nwin // index_step + 1
    tap_offsets = np.arange(n_taps, dtype=np.int64)
    filt_offsets = tap_offsets * index_step

    for start in range(0, n_out, chunk):
        stop = min(start + chunk, n_out)
        time = np.arange(start, stop, dtype=np.float64) / ratio
        n0 = time.astype(np.int64)

        for wing in (0, 1):
            frac = scale * (time - n0)
            if wing:
                frac = scale - frac
            index_frac = frac * precision
            offset = index_frac.astype(np.int64)
            eta = index_frac - offset

            idx = offset[:, None] + filt_offsets[None, :]
            if wing:
                src = n0[:, None] + 1 + tap_offsets[None, :]
                valid = (idx < nwin) & (src < n_in)
            else:
                src = n0[:, None] - tap_offsets[None, :]
                valid = (idx < nwin) & (src >= 0)
            idx = np.where(valid, idx, 0)
            src = np.where(valid, src, 0)
            w = win[idx] + eta[:, None] * delta[idx]
            out[start:stop] += np.sum(np.where(valid, w * x[src], 0.0), axis=1)

    return out


# ----------------------------------------------------------------------
# CTC prefix beam search
# ----------------------------------------------------------------------

LN10 = math.log(10.0)


def _logadd(a: float, b: float) -> float:
    if a <= NEG_INF:
        return b
    if b <= NEG_INF:
        return a
    if a < b:
        a, b = b, a
    return a + math.log1p(math.exp(b - a))


def beam_search(
    logp: np.ndarray,
    blank_id: int,
    delim_id: int,
    beam_width: int,
    lm_weight: float,
    word_bonus: float,
    scorer,
    initial_state,
    top_n: int,
):
    """CTC prefix beam search over a (T, V) natural-log probability lattice.

    Tracks per-prefix blank/non-blank log masses (the usual prefix-merging
    rules: a repeated symbol extends the prefix only through the blank-ending
    mass).  Word-level fusion: when a prefix is extended by ``delim_id`` and
    has a pending word, ``scorer(state, word_ids)`` is called once (cached on
    the prefix trie) and ``lm_weight * log10_prob * ln(10) + word_bonus`` is
    added to the prefix's ranking adjustment; a pending final word is scored
    the same way after the last frame.  ``scorer=None`` disables the LM term
    but keeps the per-word bonus.

    Pruning keeps the ``beam_width`` best prefixes per frame by
    ``total_mass + adjustment``, ties broken by trie-node creation order
    (deterministic for fixed inputs).

    Returns up to ``top_n`` tuples
    ``(prefix_ids, p_blank, p_nonblank, adjustment, combined)`` sorted by
    combined score descending, ties by id sequence.
    """
    lp = np.asarray(logp, dtype=np.float64)
    T, V = lp.shape

    # prefix trie; node 0 is the empty prefix
    parent = [-1]
    sym = [-1]
    adj = [0.0]  # fusion adjustment accumulated over completed words
    state = [initial_state]  # LM state after the last completed word
    children: dict[tuple[int, int], int] = {}

    def word_ids(node: int) -> tuple[int, ...]:
        ids = []
        while node != 0 and sym[node] != delim_id:
            ids.append(sym[node])
            node = parent[node]
        ids.reverse()
        return tuple(ids)

    def child_of(node: int, c: int) -> int:
        key = (node, c)
        nid = children.get(key)
        if nid is not None:
            return nid
        nid = len(parent)
        a, st = adj[node], state[node]
        if c == delim_id and sym[node] != delim_id and node != 0:
            if scorer is not None:
                lp10, st = scorer(st, word_ids(node))
                a += lm_weight * lp10 * LN10
            a += word_bonus
        parent.append(node)
        sym.append(c)
        adj.append(a)
        state.append(st)
        children[key] = nid
        return nid

    # masses: node -> [p_blank, p_nonblank]
    masses: dict[int, list[float]] = {}
    row = lp[0].tolist()
    if row[blank_id] > NEG_INF:
        masses[0] = [row[blank_id], NEG_INF]
    for c in range(V):
        if c != blank_id and row[c] > NEG_INF:
            masses[child_of(0, c)] = [NEG_INF, row[c]]
    masses = _prune(masses, adj, beam_width)

    for t in range(1, T):
        row = lp[t].tolist()
        p_blank = row[blank_id]
        nxt: dict[int, list[float]] = {}
        for node, (pb, pnb) in masses.items():
            tot = _logadd(pb, pnb)
            if p_blank > NEG_INF:
                _acc(nxt, node, 0, tot + p_blank)
            last = sym[node]
            for c in range(V):
                if c == blank_id:
                    continue
                p_c = row[c]
                if p_c <= NEG_INF:
                    continue
                if c == last:
                    if pnb > NEG_INF:
                        _acc(nxt, node, 1, pnb + p_c)
                    if pb > NEG_INF:
                        _acc(nxt, child_of(node, c), 1, pb + p_c)
                elif tot > NEG_INF:
                    _acc(nxt, child_of(node, c), 1, tot + p_c)
        masses = _prune(nxt, adj, beam_width)

    # final ranking includes the pending-word term
    results = []
    for node, (pb, pnb) in masses.items():
        a = adj[node]
        if sym[node] != delim_id and node != 0:
            if scorer is not None:
                lp10, _ = scorer(state[node], word_ids(node))
                a += lm_weight * lp10 * LN10
            a += word_bonus
        combined = _logadd(pb, pnb) + a
        results.append((_prefix_ids(node, parent, sym), pb, pnb, a, combined))
    results.sort(key=lambda r: (-r[4], r[0]))
    return results[:top_n]


def _prefix_ids(node: int, parent: list, sym: list) -> tuple[int, ...]:
    ids = []
    while node != 0:
        ids.append(sym[node])
        node = parent[node]
    ids.reverse()
    return tuple(ids)


def _acc(d: dict, node: int, slot: int, val: float) -> None:
    entry = d.get(node)
    if entry is None:
        d[node] = [val, NEG_INF] if slot == 0 else [NEG_INF, val]
    else:
        entry[slot] = _logadd(entry[slot], val)


def _prune(masses: dict, adj: list, beam_width: int) -> dict:
    if len(masses) <= beam_width:
        return masses
    scored = sorted(
        masses.items(),
        key=lambda kv: (-(_logadd(kv[1][0], kv[1][1]) + adj[kv[0]]), kv[0]),
    )
    return dict(scored[:beam_width])
