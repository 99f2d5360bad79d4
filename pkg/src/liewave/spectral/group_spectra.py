"""Truncated unitary duals of tori, SU(2) and SO(3).

Eigenvalues of the Laplace-Beltrami operator are kept as exact ``Fraction``
values so that the region split (zero, below one, exactly one, above one) is an
exact comparison. Floats are produced only for the numerical kernels.
"""

import itertools
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property, lru_cache
from numbers import Rational
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

ExactEigenvalue = Union[Fraction, int]


class GroupKind(str, Enum):
    """Supported compact Lie groups."""

    TORUS = "torus"
    SU2 = "su2"
    SO3 = "so3"


class Region(str, Enum):
    """Partition of the unitary dual by the size of the eigenvalue."""

    R1 = "R1"  # lambda^2 == 0
    R2 = "R2"  # 0 < lambda^2 < 1
    R3 = "R3"  # lambda^2 == 1
    R4 = "R4"  # lambda^2 > 1


def _exact(value) -> Fraction:
    """Convert a user-supplied real to an exact rational (decimal-literal exact)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, Rational):
        return Fraction(value)
    return Fraction(str(value))


@dataclass(frozen=True)
class GroupSpec:
    """Which group, its metric scaling and its spectral truncation.

    Use the ``torus``, ``su2`` and ``so3`` constructors rather than building the
    dataclass by hand; they normalise radii to exact rationals.
    """

    kind: GroupKind
    bandlimit: int
    radii: Tuple[Fraction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "kind", GroupKind(self.kind))
        if int(self.bandlimit) != self.bandlimit or self.bandlimit < 1:
            raise ValueError(f"bandlimit must be a positive integer, got {self.bandlimit!r}")
        object.__setattr__(self, "bandlimit", int(self.bandlimit))
        radii = tuple(_exact(r) for r in self.radii)
        if self.kind is GroupKind.TORUS:
            if not radii:
                raise ValueError("a torus needs at least one radius")
            if any(r <= 0 for r in radii):
                raise ValueError(f"all radii must be positive, got {[str(r) for r in radii]}")
        elif radii:
            raise ValueError(f"radii are only meaningful for tori, not {self.kind.value}")
        object.__setattr__(self, "radii", radii)

    @classmethod
    def torus(cls, radii: Sequence[float], bandlimit: int) -> "GroupSpec":
        return cls(GroupKind.TORUS, bandlimit, tuple(radii))

    @classmethod
    def su2(cls, bandlimit: int) -> "GroupSpec":
        return cls(GroupKind.SU2, bandlimit)

    @classmethod
    def so3(cls, bandlimit: int) -> "GroupSpec":
        return cls(GroupKind.SO3, bandlimit)

    @property
    def n_topological(self) -> int:
        """Topological dimension of the group."""
        if self.kind is GroupKind.TORUS:
            return len(self.radii)
        return 3

    @property
    def is_torus(self) -> bool:
        return self.kind is GroupKind.TORUS

    def with_bandlimit(self, bandlimit: int) -> "GroupSpec":
        return GroupSpec(self.kind, bandlimit, self.radii)

    def describe(self) -> str:
        if self.is_torus:
            radii = ", ".join(str(r) for r in self.radii)
            return f"T^{self.n_topological}(radii=[{radii}]) B={self.bandlimit}"
        return f"{self.kind.value.upper()} B={self.bandlimit}"


@dataclass(frozen=True)
class Representation:
    """One point of the truncated unitary dual.

    ``index`` is the integer vector k for tori, ``(m,)`` with m = 2l for SU(2) and
    ``(l,)`` for SO(3).
    """

    index: Tuple[int, ...]
    dim: int
    eigenvalue: Fraction
    region: Region

    @property
    def lambda2(self) -> float:
        return float(self.eigenvalue)

    @property
    def label(self) -> str:
        """Text form of the index used in coefficient files."""
        return ":".join(str(i) for i in self.index)

    @property
    def is_trivial(self) -> bool:
        return self.region is Region.R1


@dataclass(frozen=True)
class SpectralGaps:
    """Constants delta1, delta2 and delta3 of the truncated spectrum.

    ``delta2`` is ``None`` when no eigenvalue lies strictly between 0 and 1 and
    ``delta3`` is ``None`` when no eigenvalue exceeds 1.
    """

    delta1: Fraction
    delta2: Optional[Fraction]
    delta3: Optional[Fraction]


def region_of(eigenvalue: ExactEigenvalue) -> Region:
    """Classify an eigenvalue into R1..R4 using exact comparisons."""
    value = _exact(eigenvalue)
    if value < 0:
        raise ValueError(f"eigenvalue must be nonnegative, got {value}")
    if value == 0:
        return Region.R1
    if value < 1:
        return Region.R2
    if value == 1:
        return Region.R3
    return Region.R4


def _torus_dual(spec: GroupSpec) -> List[Representation]:
    bound = spec.bandlimit
    inv_r2 = [1 / (r * r) for r in spec.radii]
    reps = []
    for k in itertools.product(range(-bound, bound + 1), repeat=spec.n_topological):
        eig = sum((kj * kj * w for kj, w in zip(k, inv_r2)), Fraction(0))
        reps.append(Representation(tuple(k), 1, eig, region_of(eig)))
    return reps


def _su2_dual(spec: GroupSpec) -> List[Representation]:
    reps = []
    for m in range(spec.bandlimit + 1):
        # Casimir l(l+1) with l = m/2
        eig = Fraction(m * (m + 2), 4)
        reps.append(Representation((m,), m + 1, eig, region_of(eig)))
    return reps


def _so3_dual(spec: GroupSpec) -> List[Representation]:
    reps = []
    for ell in range(spec.bandlimit + 1):
        eig = Fraction(ell * (ell + 1))
        reps.append(Representation((ell,), 2 * ell + 1, eig, region_of(eig)))
    return reps


@lru_cache(maxsize=64)
def _dual_cached(spec: GroupSpec) -> Tuple[Representation, ...]:
    if spec.kind is GroupKind.TORUS:
        reps = _torus_dual(spec)
    elif spec.kind is GroupKind.SU2:
        reps = _su2_dual(spec)
    else:
        reps = _so3_dual(spec)
    return tuple(reps)


def enumerate_dual(spec: GroupSpec) -> List[Representation]:
    """List the representations retained at the spec's bandlimit.

    Order is lexicographic on the index, so the result is deterministic and the
    dual at bandlimit B is contained in the dual at B + 1.
    """
    return list(_dual_cached(spec))


def spectral_gaps(duals: Sequence[Representation]) -> SpectralGaps:
    """Compute delta1, delta2 and delta3 over a (truncated) dual."""
    if not duals:
        raise ValueError("cannot compute spectral gaps of an empty dual")
    nonzero = sorted({rep.eigenvalue for rep in duals if rep.eigenvalue != 0})
    if not nonzero:
        raise ValueError("spectral gaps are undefined when only the trivial representation is present")
    delta1 = min(min(ev, Fraction(1)) for ev in nonzero)
    below = [ev for ev in nonzero if ev < 1]
    above = [ev for ev in nonzero if ev > 1]
    return SpectralGaps(
        delta1=delta1,
        delta2=max(below) if below else None,
        delta3=min(above) if above else None,
    )


def basis_size(spec: GroupSpec) -> int:
    """Number of Peter-Weyl basis functions retained: sum of d^2."""
    return sum(rep.dim ** 2 for rep in _dual_cached(spec))


@dataclass(frozen=True)
class ModeTable:
    """Flat layout of every coefficient entry of a truncated dual.

    Entry ``i`` belongs to the representation whose slice contains ``i``; each
    d x d block is stored row-major.
    """

    spec: GroupSpec
    reps: Tuple[Representation, ...]
    slices: Tuple[slice, ...]
    lambda2: np.ndarray = field(repr=False)
    resonant: np.ndarray = field(repr=False)
    dims: np.ndarray = field(repr=False)

    @property
    def size(self) -> int:
        return int(self.lambda2.size)

    @cached_property
    def trivial_position(self) -> int:
        for rep, sl in zip(self.reps, self.slices):
            if rep.is_trivial:
                return sl.start
        raise ValueError("dual has no trivial representation")


@lru_cache(maxsize=64)
def mode_table(spec: GroupSpec) -> ModeTable:
    """Build (and cache) the flat coefficient layout for ``spec``."""
    reps = _dual_cached(spec)
    slices, lam, res, dims = [], [], [], []
    offset = 0
    for rep in reps:
        count = rep.dim * rep.dim
        slices.append(slice(offset, offset + count))
        lam.extend([float(rep.eigenvalue)] * count)
        res.extend([rep.eigenvalue == 1] * count)
        dims.extend([rep.dim] * count)
        offset += count
    arrays = [np.asarray(lam, dtype=float), np.asarray(res, dtype=bool), np.asarray(dims, dtype=float)]
    for arr in arrays:
        arr.setflags(write=False)
    return ModeTable(spec, reps, tuple(slices), *arrays)
