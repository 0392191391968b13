"""Variation operators: Order Crossover, its dynamic parent-centric
variant (dOX) whose transfer volume is driven by the adaptive transfer
matrix, and 2-opt segment reversal.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class CrossoverWindow:
    """Contiguous cutting window [start, start + length) over a genome.

    Windows never wrap: start is drawn from [0, d_max - length].
    """
    start: int
    length: int

    def __post_init__(self):
        if self.length < 1:
            raise ValueError("window length must be >= 1")
        if self.start < 0:
            raise ValueError("window start must be >= 0")


def draw_window(d_max: int, rng: np.random.Generator, length: int | None = None) -> CrossoverWindow:
    """Random window; with no length given, draws two distinct cut points."""
    if length is None:
        i, j = sorted(rng.choice(d_max + 1, size=2, replace=False))
        return CrossoverWindow(start=int(i), length=int(j - i))
    start = int(rng.integers(0, d_max - length + 1))
    return CrossoverWindow(start=start, length=length)


def _ox_child(keeper: np.ndarray, filler: np.ndarray, window: CrossoverWindow) -> np.ndarray:
    """One OX child: keeper's window segment, remaining positions filled
    left-to-right with the absent values in filler's cyclic order starting
    just after the window."""
    n = len(keeper)
    lo, hi = window.start, window.start + window.length
    child = np.empty(n, dtype=keeper.dtype)
    segment = keeper[lo:hi]
    child[lo:hi] = segment
    in_segment = np.zeros(n + 1, dtype=bool)
    in_segment[segment] = True
    fill = np.roll(filler, -hi)
    fill = fill[~in_segment[fill]]
    positions = np.concatenate([np.arange(lo), np.arange(hi, n)])
    child[positions] = fill
    return child


def order_crossover(
    a: np.ndarray,
    b: np.ndarray,
    window: CrossoverWindow | None = None,
    rng: np.random.Generator | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Order Crossover between two permutations of the same length.

    Child 1 keeps ``a``'s segment inside the window and takes the rest
    from ``b``; child 2 is the symmetric case.
    """
    if len(a) != len(b):
        raise ValueError("parents must share d_max")
    if window is None:
        if rng is None:
            raise ValueError("need a window or an rng to draw one")
        window = draw_window(len(a), rng)
    if window.start + window.length > len(a):
        raise ValueError("window exceeds genome bounds")
    return _ox_child(a, b, window), _ox_child(b, a, window)


def window_length(w: float, rmp_entry: float, d_k: int, d_max: int) -> int:
    """Cutting-window size for dOX: w * rmp * d_k, rounded half up.

    Floored at 1 gene and capped at d_max - 1 so the receiving parent
    always contributes at least one position.
    """
    raw = int(np.floor(w * rmp_entry * d_k + 0.5))
    return max(1, min(raw, d_max - 1))


def two_opt(
    genome: np.ndarray,
    i: int | None = None,
    j: int | None = None,
    rng: np.random.Generator | None = None,
) -> np.ndarray:
    """Reverse the segment between positions i and j inclusive.

    With no explicit (i, j), a random pair with i < j is drawn; i == j is
    rejected so the move always changes the genome.
    """
    n = len(genome)
    if i is None or j is None:
        if rng is None:
            raise ValueError("need explicit (i, j) or an rng")
        i, j = sorted(int(v) for v in rng.choice(n, size=2, replace=False))
    if not 0 <= i < j < n:
        raise ValueError(f"need 0 <= i < j < {n}, got ({i}, {j})")
    out = genome.copy()
    out[i:j + 1] = out[i:j + 1][::-1]
    return out


def dynamic_ox(
    dominant: np.ndarray,
    donor: np.ndarray,
    rmp_entry: float,
    w: float,
    d_k: int,
    rng: np.random.Generator,
) -> np.ndarray:
    """Dynamic parent-centric OX.

    The child equals the dominant parent outside a cutting window of
    length w * rmp * d_k; inside the window the dominant's genes are
    re-ordered to follow their relative order in the donor, so the amount
    of transferred material scales with the learned transfer probability.
    If the donor imposes no change, one adjacent 2-opt swap guarantees the
    child differs from the dominant parent.
    """
    n = len(dominant)
    length = window_length(w, rmp_entry, d_k, n)
    window = draw_window(n, rng, length=length)
    lo, hi = window.start, window.start + window.length
    child = dominant.copy()
    segment = child[lo:hi]
    donor_pos = np.empty(n + 1, dtype=np.int64)
    donor_pos[donor] = np.arange(n)
    child[lo:hi] = segment[np.argsort(donor_pos[segment], kind="stable")]
    if np.array_equal(child, dominant):
        i = int(rng.integers(0, n - 1))
        child = two_opt(child, i, i + 1)
    return child
