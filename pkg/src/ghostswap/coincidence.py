"""Coincidence-counting campaigns, contrast estimation, and delay scans.

Campaigns draw per-pixel counts around the closed-form image. Two noise
models are provided: "fixed_time" gives each pixel an independent Poisson
draw for a fixed integration time, "fixed_shots" distributes an exact
number of events multinomially. Every draw is keyed to a seed through
named substreams, so results are reproducible bit for bit no matter how
the pixels are evaluated.

The contrast estimator propagates Poisson counting noise to first order;
a parametric bootstrap is available as an independent check.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ghostswap.analytic import ContrastValue, Image, analytic_image, contrast_of_image
from ghostswap.errors import DegenerateMaskError
from ghostswap.hilbert import (
    ObjectMask,
    Projection,
    enumerate_projectors,
)

__all__ = [
    "CampaignConfig",
    "CampaignResult",
    "HomScanResult",
    "sample_campaign",
    "estimate_contrast",
    "bootstrap_contrast_sigma",
    "subtract_accidentals",
    "antisymmetric_weight",
    "hom_scan",
    "rate_budget",
]

_MODES = ("fixed_time", "fixed_shots")

# numpy seed sequences take unsigned 32-bit words
_MAX_SEED = 2**32 - 1


def _validate_seed(seed: int) -> int:
    if not isinstance(seed, (int, np.integer)) or isinstance(seed, bool):
        raise ValueError(f"seed must be an integer, got {seed!r}")
    seed = int(seed)
    if not 0 <= seed <= _MAX_SEED:
        raise ValueError(f"seed {seed} outside 0..{_MAX_SEED}")
    return seed


@dataclass(frozen=True)
class CampaignConfig:
    """Everything needed to reproduce one counting campaign.

    total is the expected number of events in fixed_time mode and the
    exact number of events in fixed_shots mode. accidental_fraction is
    the share of events coming from uncorrelated pairs, spread uniformly
    over the pixels.
    """

    mask: ObjectMask
    family: Projection
    mode: str
    total: float
    accidental_fraction: float = 0.0
    seed: int = 0

    def __post_init__(self) -> None:
        if not isinstance(self.mask, ObjectMask):
            raise ValueError(f"mask must be an ObjectMask, got {self.mask!r}")
        if not isinstance(self.family, Projection):
            raise ValueError(f"family must be a Projection member, got {self.family!r}")
        if self.mode not in _MODES:
            raise ValueError(f"mode must be one of {_MODES}, got {self.mode!r}")
        total = float(self.total)
        if not np.isfinite(total) or total <= 0:
            raise ValueError(f"total must be a positive number, got {self.total!r}")
        if self.mode == "fixed_shots" and total != int(total):
            raise ValueError(f"fixed_shots mode needs a whole number of events, got {total}")
        fraction = float(self.accidental_fraction)
        if not 0.0 <= fraction < 1.0:
            raise ValueError(
                f"accidental_fraction must lie in [0, 1), got {self.accidental_fraction!r}"
            )
        _validate_seed(self.seed)


@dataclass(frozen=True)
class CampaignResult:
    """Sampled counts plus the contrasts estimated from them."""

    counts: Image
    raw_contrast: ContrastValue
    corrected_contrast: ContrastValue
    accidental_estimate: np.ndarray = field(repr=False)
    seed: int = 0


def _expected_counts(config: CampaignConfig) -> tuple[np.ndarray, np.ndarray]:
    """Per-pixel expected counts and the uniform accidental floor."""
    image = analytic_image(config.mask, config.family)
    total = float(config.total)
    fraction = float(config.accidental_fraction)
    signal = image.pixels * (total / image.total)
    accidental = np.full(config.mask.d, fraction * total / config.mask.d)
    return (1.0 - fraction) * signal + accidental, accidental


def sample_campaign(config: CampaignConfig) -> CampaignResult:
    """Draw one campaign and estimate its contrasts.

    fixed_time mode draws each pixel from its own child stream of the
    seed, so the counts never depend on evaluation order or worker
    count. fixed_shots mode splits an exact event total multinomially.
    """
    if config.mask.is_degenerate:
        raise DegenerateMaskError(
            f"mask budget {config.mask.budget} of {config.mask.d} pixels "
            "leaves no contrast to measure"
        )
    means, accidental = _expected_counts(config)
    d = config.mask.d
    if config.mode == "fixed_time":
        children = np.random.SeedSequence(config.seed).spawn(d)
        counts = np.array(
            [np.random.default_rng(children[k]).poisson(means[k]) for k in range(d)],
            dtype=np.int64,
        )
    else:
        rng = np.random.default_rng(np.random.SeedSequence(config.seed))
        counts = rng.multinomial(int(config.total), means / means.sum()).astype(np.int64)
    counts_image = Image(counts, kind="counts", family=config.family)
    raw = _poisson_contrast(counts.astype(float), config.mask)
    corrected_image = subtract_accidentals(counts_image, accidental)
    corrected = _poisson_contrast(corrected_image.pixels, config.mask)
    return CampaignResult(
        counts=counts_image,
        raw_contrast=raw,
        corrected_contrast=corrected,
        accidental_estimate=accidental,
        seed=config.seed,
    )


def _poisson_contrast(values: np.ndarray, mask: ObjectMask) -> ContrastValue:
    """Contrast with first-order Poisson error propagation.

    Each pixel is treated as an independent Poisson count with variance
    equal to its value; the derivative of the contrast with respect to
    pixel k is (w_k - C) / total with w_k = +1/n_bright on bright pixels
    and -1/n_dark on dark ones.
    """
    value = contrast_of_image(values, mask).value
    bright = mask.as_array() == 1
    n_bright = int(bright.sum())
    n_dark = mask.d - n_bright
    total = float(values.sum())
    weights = np.where(bright, 1.0 / n_bright, -1.0 / n_dark)
    derivatives = (weights - value) / total
    variance = float(np.sum(derivatives**2 * values))
    return ContrastValue(value, float(np.sqrt(variance)))


def _as_count_values(counts: Image | np.ndarray) -> np.ndarray:
    values = counts.pixels if isinstance(counts, Image) else np.asarray(counts)
    values = np.asarray(values, dtype=float)
    if values.ndim != 1:
        raise ValueError(f"expected a 1-D count vector, got shape {values.shape}")
    if not np.all(np.isfinite(values)):
        raise ValueError("counts must be finite")
    if np.any(values < 0):
        raise ValueError("counts must be nonnegative")
    if np.any(values != np.floor(values)):
        raise ValueError("counts must be whole numbers")
    return values


def estimate_contrast(counts: Image | np.ndarray, mask: ObjectMask) -> ContrastValue:
    """Contrast of raw detector counts with propagated Poisson sigma."""
    return _poisson_contrast(_as_count_values(counts), mask)


def bootstrap_contrast_sigma(
    counts: Image | np.ndarray,
    mask: ObjectMask,
    resamples: int = 10_000,
    seed: int = 0,
) -> float:
    """Parametric bootstrap of the contrast sigma.

    Resamples every pixel as Poisson around the observed count and takes
    the spread of the recomputed contrasts. Resamples that come out all
    zero carry no contrast and are dropped.
    """
    values = _as_count_values(counts)
    if values.size != mask.d:
        raise ValueError(f"counts have {values.size} pixels but mask has {mask.d}")
    if mask.is_degenerate:
        raise DegenerateMaskError(
            f"mask budget {mask.budget} of {mask.d} pixels leaves no contrast to measure"
        )
    if resamples < 2:
        raise ValueError(f"need at least 2 resamples, got {resamples}")
    rng = np.random.default_rng(np.random.SeedSequence(_validate_seed(seed)))
    draws = rng.poisson(lam=values, size=(int(resamples), values.size)).astype(float)
    totals = draws.sum(axis=1)
    keep = totals > 0
    if keep.sum() < 2:
        raise ValueError("all resamples were empty; counts are too small to bootstrap")
    bright = mask.as_array() == 1
    means = draws[:, bright].mean(axis=1) - draws[:, ~bright].mean(axis=1)
    contrasts = means[keep] / totals[keep]
    return float(np.std(contrasts, ddof=1))


def subtract_accidentals(
    counts: Image | np.ndarray, accidental: np.ndarray | float
) -> Image:
    """Counts minus an accidental estimate, clamped at zero.

    The result is real-valued (kind "counts" still, but no longer whole
    numbers in general).
    """
    values = counts.pixels if isinstance(counts, Image) else np.asarray(counts)
    values = np.asarray(values, dtype=float)
    estimate = np.broadcast_to(np.asarray(accidental, dtype=float), values.shape)
    if not np.all(np.isfinite(estimate)):
        raise ValueError("accidental estimate must be finite")
    if np.any(estimate < 0):
        raise ValueError("accidental estimate must be nonnegative")
    family = counts.family if isinstance(counts, Image) else None
    return Image(np.clip(values - estimate, 0.0, None), kind="counts", family=family)


# ---------------------------------------------------------------------------
# two-photon interference scan
# ---------------------------------------------------------------------------

def _validate_pattern(pattern: ObjectMask, name: str) -> ObjectMask:
    if not isinstance(pattern, ObjectMask):
        raise ValueError(f"{name} must be an ObjectMask, got {pattern!r}")
    if pattern.budget == 0:
        raise ValueError(f"{name} transmits nothing; at least one pixel must be on")
    return pattern


def antisymmetric_weight(pattern_a: ObjectMask, pattern_d: ObjectMask) -> float:
    """Anti-symmetric fraction of the inner pair heralded by two patterns.

    The outer detections behind pattern_a and pattern_d leave photons B
    and C in a mixture of pixel states |i, j> weighted by the transmitted
    pixels; the weight is that mixture's overlap with the anti-symmetric
    projectors. Identical patterns give 0, disjoint ones 1/2.
    """
    pattern_a = _validate_pattern(pattern_a, "pattern_a")
    pattern_d = _validate_pattern(pattern_d, "pattern_d")
    if pattern_a.d != pattern_d.d:
        raise ValueError(
            f"pattern dimensions differ: {pattern_a.d} vs {pattern_d.d}"
        )
    d = pattern_a.d
    overlap = np.zeros((d, d))
    for projector in enumerate_projectors(d, (Projection.ANTI_SYMMETRIC,)):
        overlap += np.abs(projector.state_vector()) ** 2
    weights = np.outer(pattern_a.as_array(), pattern_d.as_array()) / (
        pattern_a.budget * pattern_d.budget
    )
    return float(np.sum(weights * overlap))


@dataclass(frozen=True)
class HomScanResult:
    """Coincidence rate versus relative delay for one pattern pair."""

    delays: np.ndarray = field(repr=False)
    rates: np.ndarray = field(repr=False)
    sampled_counts: np.ndarray | None = field(repr=False)
    antisymmetric_weight: float
    dip_width: float


def hom_scan(
    pattern_a: ObjectMask,
    pattern_d: ObjectMask,
    delays: np.ndarray,
    dip_width: float,
    shots_per_delay: int | None = None,
    seed: int = 0,
) -> HomScanResult:
    """Coincidence rate of the inner pair against relative delay.

    At zero delay the photons interfere fully and the rate equals the
    anti-symmetric weight of the heralded pair; at delays far beyond
    dip_width they become distinguishable and the rate settles at 1/2.
    The indistinguishability envelope is Gaussian in the delay.

    With shots_per_delay set, each delay also gets a Poisson-sampled
    count with expectation shots_per_delay * rate, drawn from per-delay
    substreams of the seed.
    """
    pattern_a = _validate_pattern(pattern_a, "pattern_a")
    pattern_d = _validate_pattern(pattern_d, "pattern_d")
    delays = np.asarray(delays, dtype=float).copy()
    if delays.ndim != 1 or delays.size == 0:
        raise ValueError(f"delays must be a non-empty 1-D vector, got shape {delays.shape}")
    if not np.all(np.isfinite(delays)):
        raise ValueError("delays must be finite")
    dip_width = float(dip_width)
    if not np.isfinite(dip_width) or dip_width <= 0:
        raise ValueError(f"dip_width must be positive, got {dip_width}")
    weight = antisymmetric_weight(pattern_a, pattern_d)
    envelope = np.exp(-(delays**2) / (2.0 * dip_width**2))
    # ordered so that full indistinguishability returns the weight exactly
    # and a fully decayed envelope returns exactly 1/2
    rates = weight * envelope + (1.0 - envelope) * 0.5
    sampled: np.ndarray | None = None
    if shots_per_delay is not None:
        shots = int(shots_per_delay)
        if shots <= 0:
            raise ValueError(f"shots_per_delay must be positive, got {shots_per_delay!r}")
        children = np.random.SeedSequence(_validate_seed(seed)).spawn(delays.size)
        sampled = np.array(
            [
                np.random.default_rng(children[k]).poisson(shots * rates[k])
                for k in range(delays.size)
            ],
            dtype=np.int64,
        )
        sampled.setflags(write=False)
    delays.setflags(write=False)
    rates.setflags(write=False)
    return HomScanResult(
        delays=delays,
        rates=rates,
        sampled_counts=sampled,
        antisymmetric_weight=weight,
        dip_width=dip_width,
    )


def rate_budget(transmission: float) -> float:
    """Four-fold coincidence rate factor for one arm transmission.

    All four photons must survive, so the rate scales with the fourth
    power of the per-photon transmission.
    """
    transmission = float(transmission)
    if not np.isfinite(transmission) or not 0.0 < transmission <= 1.0:
        raise ValueError(
            f"transmission must lie in (0, 1], got {transmission!r}"
        )
    return transmission**4
