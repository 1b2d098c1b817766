"""Level-by-level backward induction over a dense position table.

A level-``n`` array has one entry per move sequence of length ``n``, indexed
in base ``k`` with the first move most significant, so the children of entry
``i`` are ``i*k .. i*k+k-1``.  Each step exists twice: a numba kernel and a
numpy twin.  Setting ``RANKFORGE_NO_NUMBA=1`` selects the numpy path.
"""

import os

import numpy as np

INF = np.int64(1 << 40)


def prefix_step_np(prev_prefix, wins_here, k):
    return np.repeat(prev_prefix, k) | wins_here


def cover_step_np(next_cover, prefix_here, k):
    return prefix_here | next_cover.reshape(-1, k).all(axis=1)


def rank_step_np(next_rank, cover_here, k):
    best = next_rank.reshape(-1, k, k).max(axis=2).min(axis=1)
    ranked = np.where(best >= INF, INF, best + 1)
    return np.where(cover_here, 0, ranked).astype(np.int64)


NUMPY_KERNELS = (prefix_step_np, cover_step_np, rank_step_np)


try:
    from numba import njit
except ImportError:  # pragma: no cover
    njit = None

if njit is not None:

    @njit(cache=True)
    def prefix_step_nb(prev_prefix, wins_here, k):
        out = np.empty(wins_here.shape[0], dtype=np.bool_)
        for i in range(wins_here.shape[0]):
            out[i] = prev_prefix[i // k] or wins_here[i]
        return out

    @njit(cache=True)
    def cover_step_nb(next_cover, prefix_here, k):
        n = prefix_here.shape[0]
        out = np.empty(n, dtype=np.bool_)
        for i in range(n):
            if prefix_here[i]:
                out[i] = True
                continue
            ok = True
            for j in range(k):
                if not next_cover[i * k + j]:
                    ok = False
                    break
            out[i] = ok
        return out

    @njit(cache=True)
    def rank_step_nb(next_rank, cover_here, k):
        n = cover_here.shape[0]
        out = np.empty(n, dtype=np.int64)
        kk = k * k
        for i in range(n):
            if cover_here[i]:
                out[i] = 0
                continue
            best = INF
            for a in range(k):
                worst = np.int64(0)
                base = i * kk + a * k
                for b in range(k):
                    v = next_rank[base + b]
                    if v > worst:
                        worst = v
                if worst < best:
                    best = worst
            out[i] = INF if best >= INF else best + 1
        return out

    NUMBA_KERNELS = (prefix_step_nb, cover_step_nb, rank_step_nb)
else:  # pragma: no cover
    NUMBA_KERNELS = None


def _select():
    if os.environ.get("RANKFORGE_NO_NUMBA", "").strip() not in ("", "0"):
        return "numpy", NUMPY_KERNELS
    if NUMBA_KERNELS is None:  # pragma: no cover
        return "numpy", NUMPY_KERNELS
    return "numba", NUMBA_KERNELS


def kernels(name=None):
    """The (prefix, cover, rank) step triple for a backend name."""
    if name is None:
        return KERNELS
    if name == "numpy":
        return NUMPY_KERNELS
    if name == "numba" and NUMBA_KERNELS is not None:
        return NUMBA_KERNELS
    raise ValueError(f"backend {name!r} is not available")


BACKEND, KERNELS = _select()


def solve_levels(wins, k, horizon, backend=None):
    """Covered flags for every level and ranks for every even level.

    ``wins[n]`` flags the move sequences of length ``n`` that are winning
    positions.  A position is covered when some prefix wins, or when it is
    short of the horizon and every one-move extension is covered.
    """
    prefix_step, cover_step, rank_step = kernels(backend)
    prefix = [np.ascontiguousarray(wins[0], dtype=np.bool_)]
    for n in range(1, horizon + 1):
        prefix.append(prefix_step(prefix[-1], np.ascontiguousarray(wins[n], dtype=np.bool_), k))
    cover = [None] * (horizon + 1)
    cover[horizon] = prefix[horizon]
    for n in range(horizon - 1, -1, -1):
        cover[n] = cover_step(cover[n + 1], prefix[n], k)
    rank = [None] * (horizon + 1)
    rank[horizon] = np.where(cover[horizon], 0, INF).astype(np.int64)
    for n in range(horizon - 2, -1, -2):
        rank[n] = rank_step(rank[n + 2], cover[n], k)
    return cover, rank
