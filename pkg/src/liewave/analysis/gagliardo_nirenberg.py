"""Empirical Gagliardo-Nirenberg ratios ||f||_Lq / (||f||_H1^theta ||f||_L2^(1-theta)).

No absolute constant is asserted; boundedness is judged by the corpus maximum
staying put when the bandlimit is doubled.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from ..spectral.group_spectra import GroupSpec, mode_table
from ..spectral.harmonic import (
    GridField,
    SpectralField,
    forward_gft,
    inverse_gft,
    lq_norm,
    make_grid,
    plancherel_norm,
    random_spectral_field,
    sobolev_norm,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GNRatio:
    """One ratio evaluation."""

    q: float
    theta: float
    ratio: float
    lq: float
    h1: float
    l2: float
    exceeds_reference: Optional[bool] = None


@dataclass
class GNCorpusReport:
    spec: GroupSpec
    q: float
    ratios: List[float]

    @property
    def max_ratio(self) -> float:
        return max(self.ratios)


@dataclass
class GNStabilityReport:
    """Corpus maxima at bandlimit B and at the refined bandlimit."""

    base: GNCorpusReport
    refined: GNCorpusReport
    growth: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.refined.max_ratio)) and self.growth < self.tolerance


def gn_theta(n: int, q: float) -> float:
    """theta(n, q) = n (1/2 - 1/q)."""
    return n * (0.5 - 1.0 / q)


def check_gn_exponent(spec: GroupSpec, q: float) -> None:
    n = spec.n_topological
    if n < 3:
        raise ValueError(f"the inequality needs dimension n >= 3, {spec.describe()} has n = {n}")
    upper = 2.0 * n / (n - 2)
    if not 2.0 <= q <= upper:
        raise ValueError(f"q must lie in [2, {upper:.6g}] for n = {n}, got {q}")


def gn_ratio_from_coefficients(F: SpectralField, q: float, oversample: float = 2.0) -> GNRatio:
    check_gn_exponent(F.spec, q)
    theta = gn_theta(F.spec.n_topological, q)
    l2 = plancherel_norm(F)
    if l2 == 0:
        raise ValueError("the ratio is undefined for the zero function")
    h1 = sobolev_norm(F, 1.0)
    lq = lq_norm(inverse_gft(F, make_grid(F.spec, oversample)), q)
    ratio = lq / (h1 ** theta * l2 ** (1.0 - theta))
    return GNRatio(q, theta, ratio, lq, h1, l2)


def gn_ratio_check(f: GridField, q: float, reference_max: Optional[float] = None,
                   tolerance: float = 0.05) -> GNRatio:
    """Ratio for grid samples of a bandlimited function.

    The L^q norm is taken by quadrature on the samples' own grid; the L2 and H1
    norms come from the truncated coefficients. With ``reference_max`` (a
    corpus maximum) the result flags ratios above reference_max (1 + tolerance).
    """
    check_gn_exponent(f.spec, q)
    F = forward_gft(f)
    theta = gn_theta(f.spec.n_topological, q)
    l2 = plancherel_norm(F)
    if l2 == 0:
        raise ValueError("the ratio is undefined for the zero function")
    h1 = sobolev_norm(F, 1.0)
    lq = lq_norm(f, q)
    ratio = lq / (h1 ** theta * l2 ** (1.0 - theta))
    exceeds = None
    if reference_max is not None:
        exceeds = bool(ratio > reference_max * (1.0 + tolerance))
        if exceeds:
            logger.warning(f"GN ratio {ratio:.6g} exceeds the corpus maximum {reference_max:.6g}")
    return GNRatio(q, theta, ratio, lq, h1, l2, exceeds)


def restrict_field(F: SpectralField, spec: GroupSpec) -> SpectralField:
    """Keep only the representations present in the (smaller) ``spec``."""
    source = F.coeffs
    by_index = {rep.index: block for rep, block in source.items()}
    target = mode_table(spec)
    data = np.zeros(target.size, dtype=complex)
    for rep, sl in zip(target.reps, target.slices):
        if rep.index not in by_index:
            raise ValueError(f"representation {rep.index} missing from the source field")
        data[sl] = by_index[rep.index].reshape(-1)
    return SpectralField(spec, data)


def _corpus(spec: GroupSpec, n_fields: int, seed: int, decay: float) -> List[SpectralField]:
    rng = np.random.default_rng(seed)
    return [random_spectral_field(spec, rng, decay) for _ in range(n_fields)]


def gn_corpus_study(spec: GroupSpec, q: float, n_fields: int = 100, seed: int = 0, decay: float = 4.0,
                    oversample: float = 2.0) -> GNCorpusReport:
    """Ratios of a random bandlimited corpus on ``spec``."""
    check_gn_exponent(spec, q)
    ratios = [gn_ratio_from_coefficients(F, q, oversample).ratio for F in _corpus(spec, n_fields, seed, decay)]
    report = GNCorpusReport(spec, q, ratios)
    logger.info(f"GN corpus on {spec.describe()}, q={q}: max ratio {report.max_ratio:.6g}")
    return report


def gn_bandlimit_stability(spec: GroupSpec, q: float, n_fields: int = 100, seed: int = 0, decay: float = 4.0,
                           factor: int = 2, oversample: float = 2.0, tolerance: float = 0.05) -> GNStabilityReport:
    """Compare corpus maxima at B and factor * B.

    The corpus is drawn once at the refined bandlimit and truncated to B, so
    both maxima describe the same functions up to their high-frequency tails.
    """
    check_gn_exponent(spec, q)
    refined_spec = spec.with_bandlimit(spec.bandlimit * factor)
    fields = _corpus(refined_spec, n_fields, seed, decay)
    refined = GNCorpusReport(refined_spec, q, [gn_ratio_from_coefficients(F, q, oversample).ratio for F in fields])
    base = GNCorpusReport(
        spec, q, [gn_ratio_from_coefficients(restrict_field(F, spec), q, oversample).ratio for F in fields]
    )
    growth = refined.max_ratio / base.max_ratio - 1.0
    logger.info(
        f"GN stability {spec.describe()} -> B={refined_spec.bandlimit}: "
        f"{base.max_ratio:.6g} -> {refined.max_ratio:.6g} (growth {growth:+.3%})"
    )
    return GNStabilityReport(base, refined, growth, tolerance)
