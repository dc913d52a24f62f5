"""Numba inner loops for the optimizer.

Kept free of Python objects: callers pass flat arrays.  All quantities here
are *unnormalized* halves — a move's true quality change is
``2 * gain / two_mu`` (doubled again under the alternative normalization);
positive gain means positive change under either, so acceptance tests on
the raw gain are exact.
"""

from __future__ import annotations

import numpy as np
from numba import njit

__all__ = ["greedy_sweep", "exhaustive_best_partition"]


@njit(cache=True)
def greedy_sweep(indptr, indices, weights, k_indptr, k_slice, k_value,
                 gamma_over_2m, labels, comm_strength, order,
                 cand_comm, cand_w, cand_pos):
    """One best-improvement pass over all nodes in the given order.

    comm_strength : (C, S) per-community per-slice strengths, kept in sync
    cand_comm, cand_w : scratch, length >= max node degree + 1
    cand_pos : scratch of length C, filled with -1
    Returns (moves_made, total_gain).  A node moves only when its best
    candidate beats staying strictly; ties keep the node where it is, and
    among improving candidates the smallest community id wins.
    """
    moves = 0
    total_gain = 0.0
    for oi in range(order.shape[0]):
        u = order[oi]
        a = labels[u]
        # gather weights from u to each adjacent community (own included)
        n_cand = 0
        for t in range(indptr[u], indptr[u + 1]):
            v = indices[t]
            if v == u:
                continue
            c = labels[v]
            p = cand_pos[c]
            if p == -1:
                cand_pos[c] = n_cand
                cand_comm[n_cand] = c
                cand_w[n_cand] = weights[t]
                n_cand += 1
            else:
                cand_w[p] += weights[t]
        w_own = 0.0
        p_own = cand_pos[a]
        if p_own != -1:
            w_own = cand_w[p_own]
        # score of staying, with u's own strength excluded from its community
        stay = w_own
        for t in range(k_indptr[u], k_indptr[u + 1]):
            s = k_slice[t]
            k = k_value[t]
            stay -= gamma_over_2m[s] * k * (comm_strength[a, s] - k)
        best_gain = 0.0
        best_comm = a
        for j in range(n_cand):
            c = cand_comm[j]
            if c == a:
                continue
            score = cand_w[j]
            for t in range(k_indptr[u], k_indptr[u + 1]):
                s = k_slice[t]
                score -= gamma_over_2m[s] * k_value[t] * comm_strength[c, s]
            gain = score - stay
            if gain > best_gain or (gain == best_gain and best_gain > 0.0
                                    and c < best_comm):
                best_gain = gain
                best_comm = c
        for j in range(n_cand):
            cand_pos[cand_comm[j]] = -1
        if best_gain > 0.0:
            for t in range(k_indptr[u], k_indptr[u + 1]):
                s = k_slice[t]
                comm_strength[a, s] -= k_value[t]
                comm_strength[best_comm, s] += k_value[t]
            labels[u] = best_comm
            moves += 1
            total_gain += best_gain
    return moves, total_gain


@njit(cache=True)
def exhaustive_best_partition(indptr, indices, weights, diag, slice_of,
                              strength, gamma_over_2m):
    """Exact optimum by depth-first search over canonical label strings.

    Node d may take any label used by nodes < d, or the next fresh one, so
    every partition is visited exactly once.  Scores are built incrementally;
    ties keep the first (lexicographically smallest) label string.  Intended
    for small instances only; callers enforce the size cap.
    """
    n = indptr.shape[0] - 1
    S = gamma_over_2m.shape[0]
    best_score = -np.inf
    best_labels = np.zeros(n, dtype=np.int64)
    a = np.zeros(n, dtype=np.int64)          # current label string
    choice = np.zeros(n, dtype=np.int64)     # next label to try at depth d
    nb_at = np.zeros(n + 1, dtype=np.int64)  # labels in use below depth d
    score_at = np.zeros(n + 1)
    block_k = np.zeros((S, n))               # per-slice strength per label
    w_to = np.zeros((n, n))                  # weight from depth node to label
    depth = 0
    while depth >= 0:
        if choice[depth] > min(nb_at[depth], n - 1):
            depth -= 1
            if depth >= 0:
                lbl = a[depth]
                s = slice_of[depth]
                block_k[s, lbl] -= strength[depth]
            continue
        lbl = choice[depth]
        choice[depth] += 1
        # incremental score of putting node `depth` into block `lbl`
        s = slice_of[depth]
        k = strength[depth]
        delta = (2.0 * w_to[depth, lbl] + diag[depth]
                 - gamma_over_2m[s] * (2.0 * k * block_k[s, lbl] + k * k))
        a[depth] = lbl
        block_k[s, lbl] += k
        score_at[depth + 1] = score_at[depth] + delta
        nb_at[depth + 1] = max(nb_at[depth], lbl + 1)
        if depth + 1 == n:
            if score_at[n] > best_score:
                best_score = score_at[n]
                for i in range(n):
                    best_labels[i] = a[i]
            block_k[s, lbl] -= k
            continue
        depth += 1
        choice[depth] = 0
        # weights from the new frontier node to each existing block
        d = depth
        for j in range(nb_at[d] + 1):
            w_to[d, j] = 0.0
        for t in range(indptr[d], indptr[d + 1]):
            v = indices[t]
            if v < d:
                w_to[d, a[v]] += weights[t]
    return best_score, best_labels
