"""Pure numpy implementations of the rank-map kernels."""
import numpy as np


def count_le(sorted_values, queries):
    return np.searchsorted(sorted_values, queries, side="right").astype(np.int64)


def rank_map(queries, from_sorted, to_sorted):
    n_from = np.int64(len(from_sorted))
    n_to = np.int64(len(to_sorted))
    c = count_le(from_sorted, queries)
    zeros = int(np.count_nonzero(c == 0))
    # ceil(n_to * c / n_from) in integer arithmetic: no float rounding at tau = k/n
    k = np.maximum((n_to * c + n_from - 1) // n_from, 1)
    return to_sorted[k - 1], zeros
