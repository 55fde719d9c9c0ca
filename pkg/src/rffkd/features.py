"""Random Fourier feature maps for the Gaussian kernel.

Two variants:

CosSin      t frequency rows omega_i ~ N(0, sigma^-2 I); each input x maps to
            2t coordinates [cos<omega_i, x>, sin<omega_i, x>] / sqrt(t).
            Every embedded point has unit norm, the embedded inner product is
            (1/t) sum_i cos<omega_i, x - y>, and its expectation over maps is
            exactly K(x, y).

CosShift    m frequency rows plus phase shifts gamma_i uniform on (0, 2pi];
            x maps to sqrt(2) cos(<omega_i, x> + gamma_i) / sqrt(m).  The
            embedded inner product is unbiased for K(x, y) but rows are not
            unit norm and no relative-error guarantee on distances is claimed
            for this variant.

Frequency row i is drawn from its own counter-based stream keyed by
(seed, i), so maps are bit-reproducible and row draws are order-independent
(see streams.py).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .kernel import Bandwidth, PointSet, ScaledDiff
from .streams import check_seed, row_generator

__all__ = [
    "Variant",
    "FeatureMapSpec",
    "FeatureMap",
    "Embedding",
    "ApproxKernelPair",
    "sample_map",
    "embed",
    "approx_kernel",
    "approx_distance",
    "approx_kernel_pair",
    "projected_frequencies",
    "sq_distance_from_projections",
]


class Variant(str, enum.Enum):
    COS_SIN = "cossin"
    COS_SHIFT = "cosshift"


@dataclass(frozen=True)
class FeatureMapSpec:
    """What to sample: variant, bandwidth, size and seed.

    size is the number of cos/sin pairs t for CosSin (output dimension 2t)
    and the number of features m for CosShift (output dimension m).
    """

    variant: Variant
    sigma: Bandwidth
    size: int
    seed: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "variant", Variant(self.variant))
        if not isinstance(self.sigma, Bandwidth):
            raise ValueError("sigma must be a Bandwidth")
        if int(self.size) != self.size or self.size < 1:
            raise ValueError(f"size must be an integer >= 1, got {self.size}")
        object.__setattr__(self, "size", int(self.size))
        object.__setattr__(self, "seed", check_seed(self.seed))

    @property
    def output_dim(self) -> int:
        return 2 * self.size if self.variant is Variant.COS_SIN else self.size


@dataclass(frozen=True)
class FeatureMap:
    """Sampled map: frequency matrix (size x dim) and, for CosShift, shifts."""

    spec: FeatureMapSpec
    frequencies: np.ndarray
    shifts: np.ndarray | None = None

    @property
    def dim(self) -> int:
        return self.frequencies.shape[1]


@dataclass(frozen=True)
class Embedding:
    """Embedded points: n x output_dim feature matrix plus the map spec."""

    features: np.ndarray
    spec: FeatureMapSpec

    @property
    def n(self) -> int:
        return self.features.shape[0]

    @property
    def output_dim(self) -> int:
        return self.features.shape[1]


@dataclass(frozen=True)
class ApproxKernelPair:
    """Embedded inner product and embedded distance for one pair."""

    k_hat: float
    d_hat: float


def sample_map(spec: FeatureMapSpec, dim: int) -> FeatureMap:
    """Draw the map described by spec for inputs in R^dim.

    Frequencies are N(0, sigma^-2 I), one independent stream per row; the
    CosShift variant additionally draws each row's phase from the same row
    stream, uniform on (0, 2pi].
    """
    if int(dim) != dim or dim < 1:
        raise ValueError(f"dim must be an integer >= 1, got {dim}")
    dim = int(dim)
    scale = 1.0 / spec.sigma.sigma
    freq = np.empty((spec.size, dim))
    shifts = np.empty(spec.size) if spec.variant is Variant.COS_SHIFT else None
    for row in range(spec.size):
        gen = row_generator(spec.seed, row)
        freq[row] = gen.standard_normal(dim) * scale
        if shifts is not None:
            # 2*pi*(1 - U) with U in [0, 1) lands in (0, 2*pi]
            shifts[row] = 2.0 * math.pi * (1.0 - gen.random())
    freq.setflags(write=False)
    if shifts is not None:
        shifts.setflags(write=False)
    return FeatureMap(spec=spec, frequencies=freq, shifts=shifts)


def embed(points: PointSet, fmap: FeatureMap) -> Embedding:
    """Apply the map to every row of points."""
    if points.dim != fmap.dim:
        raise ValueError(f"dimension mismatch: points have dim {points.dim}, map has dim {fmap.dim}")
    proj = points.data @ fmap.frequencies.T  # n x size
    spec = fmap.spec
    if spec.variant is Variant.COS_SIN:
        amp = 1.0 / math.sqrt(spec.size)
        out = np.empty((points.n, 2 * spec.size))
        out[:, 0::2] = np.cos(proj)
        out[:, 1::2] = np.sin(proj)
        out *= amp
    else:
        amp = math.sqrt(2.0 / spec.size)
        out = amp * np.cos(proj + fmap.shifts)
    out.setflags(write=False)
    return Embedding(features=out, spec=spec)


def _check_rows(ex: np.ndarray, ey: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    ex = np.asarray(ex, dtype=np.float64)
    ey = np.asarray(ey, dtype=np.float64)
    if ex.ndim != 1 or ey.ndim != 1 or ex.shape != ey.shape:
        raise ValueError("embedded rows must be 1-d vectors of equal length")
    return ex, ey


def approx_kernel(ex, ey) -> float:
    """Embedded inner product <phi(x), phi(y)> for two embedding rows."""
    ex, ey = _check_rows(ex, ey)
    return float(ex @ ey)


def approx_distance(ex, ey) -> float:
    """Embedded Euclidean distance ||phi(x) - phi(y)||."""
    ex, ey = _check_rows(ex, ey)
    return float(np.linalg.norm(ex - ey))


def approx_kernel_pair(ex, ey) -> ApproxKernelPair:
    """Both embedded quantities for one pair of rows.

    For CosSin rows these satisfy d_hat^2 = 2 - 2 k_hat up to float error,
    because embedded points have unit norm.
    """
    return ApproxKernelPair(k_hat=approx_kernel(ex, ey), d_hat=approx_distance(ex, ey))


def projected_frequencies(fmap: FeatureMap, diff: ScaledDiff) -> np.ndarray:
    """Frequencies projected on the direction of a scaled difference.

    Returns sigma * <omega_i, delta/||delta||> for each row, which is an
    i.i.d. standard normal vector of length size.  The embedded quantities
    for the pair behind diff depend on the map only through these scalars:
    <omega_i, x - y> = proj_i * ||delta||.
    """
    if diff.dim != fmap.dim:
        raise ValueError(f"dimension mismatch: diff has dim {diff.dim}, map has dim {fmap.dim}")
    if diff.norm == 0.0:
        raise ValueError("projection direction is undefined for a zero difference")
    unit = diff.delta / diff.norm
    return fmap.spec.sigma.sigma * (fmap.frequencies @ unit)


def sq_distance_from_projections(proj, scaled_norm: float):
    """CosSin squared embedded distance from projected frequencies.

    For a pair at scaled distance r with projected frequencies w_i,
    ||phi(x) - phi(y)||^2 = (2/t) sum_i (1 - cos(w_i r)), evaluated as
    (4/t) sum_i sin^2(w_i r / 2) so tiny distances keep full relative
    precision.  scaled_norm may be a scalar or an array (broadcast against
    the projection axis, which must come last).
    """
    proj = np.asarray(proj, dtype=np.float64)
    if proj.ndim < 1 or proj.shape[-1] < 1:
        raise ValueError("projections must have at least one entry")
    r = np.asarray(scaled_norm, dtype=np.float64)
    if np.any(r < 0):
        raise ValueError("scaled norm must be nonnegative")
    half = 0.5 * proj * r[..., np.newaxis] if r.ndim else 0.5 * proj * r
    s = np.sin(half)
    out = 4.0 * np.mean(s * s, axis=-1)
    return float(out) if out.ndim == 0 else out
