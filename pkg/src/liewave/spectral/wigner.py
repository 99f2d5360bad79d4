"""Wigner small-d matrices for integer and half-integer spin.

Everything is indexed with doubled integers (``two_j = 2j``, ``two_m = 2m``) so
half-integer spins never go through floating point. Matrices are laid out with
rows and columns ordered by ascending magnetic number, ``m = -j, ..., j``, and
follow the convention ``d^j_{m'm}(beta) = <j m'| exp(-i beta J_y) |j m>``.
"""

import math
from functools import lru_cache
from typing import Dict, Tuple

import numpy as np


def _half(two_x: int) -> float:
    return two_x / 2.0


def wigner_d_explicit(two_j: int, two_mp: int, two_m: int, beta) -> np.ndarray:
    """Direct factorial sum for a single element d^j_{m'm}(beta).

    Factorials go through ``math.lgamma``; only use this for small spins (base
    cases of the recurrence and test oracles).
    """
    if (two_j - two_mp) % 2 or (two_j - two_m) % 2:
        raise ValueError("j, m' and m must be all integer or all half-integer")
    if abs(two_mp) > two_j or abs(two_m) > two_j:
        return np.zeros_like(np.asarray(beta, dtype=float))
    beta = np.asarray(beta, dtype=float)
    c = np.cos(beta / 2.0)
    s = np.sin(beta / 2.0)
    jpmp = (two_j + two_mp) // 2
    jmmp = (two_j - two_mp) // 2
    jpm = (two_j + two_m) // 2
    jmm = (two_j - two_m) // 2
    mp_minus_m = (two_mp - two_m) // 2
    log_norm = 0.5 * (math.lgamma(jpmp + 1) + math.lgamma(jmmp + 1)
                      + math.lgamma(jpm + 1) + math.lgamma(jmm + 1))
    total = np.zeros_like(beta)
    s_min = max(0, -mp_minus_m)
    s_max = min(jpm, jmmp)
    for k in range(s_min, s_max + 1):
        log_den = (math.lgamma(jpm - k + 1) + math.lgamma(k + 1)
                   + math.lgamma(mp_minus_m + k + 1) + math.lgamma(jmmp - k + 1))
        sign = -1.0 if (mp_minus_m + k) % 2 else 1.0
        cos_pow = two_j - mp_minus_m - 2 * k
        sin_pow = mp_minus_m + 2 * k
        total = total + sign * math.exp(log_norm - log_den) * c ** cos_pow * s ** sin_pow
    return total


def _recurrence_chain(two_mp: int, two_m: int, two_j_max: int, cos_beta: np.ndarray,
                      base: np.ndarray) -> Dict[int, np.ndarray]:
    """Run the three-term recurrence in j for fixed (m', m) from j0 = max(|m'|, |m|)."""
    two_j0 = max(abs(two_mp), abs(two_m))
    mp = _half(two_mp)
    m = _half(two_m)
    values = {two_j0: base}
    previous = np.zeros_like(base)
    current = base
    for two_j in range(two_j0, two_j_max - 1, 2):
        j = _half(two_j)
        jp1_sq = (j + 1.0) ** 2
        outer = math.sqrt((jp1_sq - m * m) * (jp1_sq - mp * mp))
        if two_j == 0:
            # j = 0 only when m' = m = 0: d^1_00 = cos(beta)
            nxt = cos_beta * current
        else:
            a = (2.0 * j + 1.0) * (j + 1.0) / outer
            cross = mp * m / (j * (j + 1.0))
            b = (j + 1.0) * math.sqrt((j * j - m * m) * (j * j - mp * mp)) / (j * outer)
            nxt = a * (cos_beta - cross) * current - b * previous
        previous, current = current, nxt
        values[two_j + 2] = current
    return values


@lru_cache(maxsize=32)
def _small_d_cached(two_j_max: int, betas: Tuple[float, ...]) -> Dict[int, np.ndarray]:
    beta = np.asarray(betas, dtype=float)
    cos_beta = np.cos(beta)
    tables = {tj: np.zeros((beta.size, tj + 1, tj + 1)) for tj in range(two_j_max + 1)}
    for parity in (0, 1):
        for two_mp in range(-two_j_max, two_j_max + 1):
            if (two_mp - parity) % 2:
                continue
            for two_m in range(-two_j_max, two_j_max + 1):
                if (two_m - parity) % 2:
                    continue
                two_j0 = max(abs(two_mp), abs(two_m))
                if two_j0 > two_j_max:
                    continue
                base = wigner_d_explicit(two_j0, two_mp, two_m, beta)
                chain = _recurrence_chain(two_mp, two_m, two_j_max, cos_beta, base)
                for two_j, column in chain.items():
                    row = (two_mp + two_j) // 2
                    col = (two_m + two_j) // 2
                    tables[two_j][:, row, col] = column
    for arr in tables.values():
        arr.setflags(write=False)
    return tables


def wigner_small_d(two_j_max: int, betas) -> Dict[int, np.ndarray]:
    """All d^j(beta) matrices for 2j = 0 .. two_j_max.

    Returns a mapping ``two_j -> array`` of shape ``(len(betas), 2j+1, 2j+1)``.
    """
    if two_j_max < 0:
        raise ValueError(f"two_j_max must be nonnegative, got {two_j_max}")
    key = tuple(float(b) for b in np.atleast_1d(np.asarray(betas, dtype=float)))
    return _small_d_cached(int(two_j_max), key)


def magnetic_numbers(two_j: int) -> np.ndarray:
    """m = -j, ..., j as floats."""
    return (np.arange(two_j + 1) * 2 - two_j) / 2.0
