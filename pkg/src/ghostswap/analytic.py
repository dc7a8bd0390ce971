"""Closed-form images, projection probabilities, and contrasts.

Heralding on a joint projection of the inner photons B and C turns the
per-pixel coincidence distribution of photons A (behind the object mask)
and D (scanned) into an image of the mask. With budget b bright pixels in
dimension d the per-pixel intensities are

    anti-symmetric family:  (b - o(k)) / (2 d^2)
    diagonal family:        2 o(k)     / (2 d^2)
    symmetric aggregate:    (b + o(k)) / (2 d^2)

with o(k) in {0, 1} the mask value, so the anti-symmetric image is an
inverted copy of the object and the two aggregates sum to a flat b / d^2.
All closed-form images carry exact integer numerators over the common
denominator 2 d^2, which keeps the identities between families free of
float rounding at any dimension.

The contrast of an image against its mask is defined as

    (mean over bright pixels - mean over dark pixels) / (sum over all pixels)

which evaluates to -1 / (b (d - 1)) for the anti-symmetric family and
+1 / (b (d + 1)) for the symmetric aggregate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ghostswap.errors import DegenerateMaskError
from ghostswap.hilbert import (
    DensityMatrix,
    ObjectMask,
    Projection,
    apply_object_mask,
    build_initial_state,
    enumerate_projectors,
    project_bc,
    validate_dimension,
)

__all__ = [
    "Image",
    "ContrastValue",
    "add_images",
    "analytic_image",
    "projection_probability",
    "conditional_density",
    "analytic_contrast",
    "contrast_of_image",
]

_KINDS = ("probability", "counts")


class Image:
    """Per-pixel nonnegative intensities with a semantic kind.

    kind "probability" marks exact per-event probabilities; kind "counts"
    marks detector counts, which stay integer-valued until accidental
    subtraction turns them into reals. Images built from closed forms also
    carry their exact rational representation (integer numerators over one
    integer denominator) so identity checks between images avoid float
    rounding.
    """

    __slots__ = ("_pixels", "_kind", "_family", "_numerators", "_denominator")

    def __init__(
        self,
        pixels: np.ndarray,
        kind: str = "probability",
        family: Projection | None = None,
    ) -> None:
        if kind not in _KINDS:
            raise ValueError(f"image kind must be one of {_KINDS}, got {kind!r}")
        source = np.asarray(pixels)
        # raw detector counts keep their integer dtype; everything else is real
        if np.issubdtype(source.dtype, np.integer):
            values = source.astype(np.int64)
        else:
            values = source.astype(float)
        if values.ndim != 1 or values.size < 2:
            raise ValueError(f"image must be a 1-D vector of at least 2 pixels, got shape {values.shape}")
        if not np.all(np.isfinite(values)):
            raise ValueError("image pixels must be finite")
        if np.any(values < 0):
            raise ValueError("image pixels must be nonnegative")
        values.setflags(write=False)
        self._pixels = values
        self._kind = kind
        self._family = family
        self._numerators: np.ndarray | None = None
        self._denominator: int | None = None

    @classmethod
    def from_rational(
        cls,
        numerators: np.ndarray,
        denominator: int,
        kind: str = "probability",
        family: Projection | None = None,
    ) -> "Image":
        """Image whose pixels are integer numerators over one denominator."""
        numer = np.asarray(numerators, dtype=np.int64).copy()
        denominator = int(denominator)
        if denominator <= 0:
            raise ValueError(f"denominator must be positive, got {denominator}")
        if np.any(numer < 0):
            raise ValueError("numerators must be nonnegative")
        image = cls(numer / denominator, kind=kind, family=family)
        numer.setflags(write=False)
        image._numerators = numer
        image._denominator = denominator
        return image

    @property
    def pixels(self) -> np.ndarray:
        return self._pixels

    @property
    def kind(self) -> str:
        return self._kind

    @property
    def family(self) -> Projection | None:
        return self._family

    @property
    def d(self) -> int:
        return self._pixels.size

    @property
    def total(self) -> float:
        return float(self._pixels.sum())

    @property
    def is_integral(self) -> bool:
        return bool(np.issubdtype(self._pixels.dtype, np.integer))

    @property
    def numerators(self) -> np.ndarray | None:
        """Exact integer numerators, or None for images without them."""
        return self._numerators

    @property
    def denominator(self) -> int | None:
        return self._denominator

    def __repr__(self) -> str:
        tag = f", family={self._family.value}" if self._family else ""
        return f"Image(d={self.d}, kind={self._kind!r}{tag})"


def add_images(first: Image, second: Image) -> Image:
    """Pixelwise sum, staying on the exact rational path when possible."""
    if first.d != second.d:
        raise ValueError(f"image dimensions differ: {first.d} vs {second.d}")
    if first.kind != second.kind:
        raise ValueError(f"image kinds differ: {first.kind!r} vs {second.kind!r}")
    if (
        first.numerators is not None
        and second.numerators is not None
        and first.denominator == second.denominator
    ):
        return Image.from_rational(
            first.numerators + second.numerators, first.denominator, kind=first.kind
        )
    return Image(first.pixels + second.pixels, kind=first.kind)


@dataclass(frozen=True)
class ContrastValue:
    """Contrast estimate with a one-sigma uncertainty (0 when exact)."""

    value: float
    sigma: float


def analytic_image(mask: ObjectMask, family: Projection) -> Image:
    """Closed-form heralded image of a mask for one projection family.

    Works at any dimension; no dense tensors are involved. The pixels are
    exact rationals over the common denominator 2 d^2.
    """
    if not isinstance(family, Projection):
        raise ValueError(f"expected a Projection member, got {family!r}")
    d = mask.d
    budget = mask.budget
    u = mask.as_array()
    if family in (Projection.PSI_MINUS, Projection.PSI_PLUS, Projection.ANTI_SYMMETRIC):
        numer = budget - u
    elif family is Projection.PHI:
        numer = 2 * u
    else:
        numer = budget + u
    return Image.from_rational(numer, 2 * d * d, family=family)


def projection_probability(d: int, family: Projection) -> float:
    """Total probability of the family outcome with no object in place.

    (d - 1) / (2 d) for the anti-symmetric family, (d + 1) / (2 d) for the
    symmetric aggregate; the two sum to 1.
    """
    d = validate_dimension(d)
    if not isinstance(family, Projection):
        raise ValueError(f"expected a Projection member, got {family!r}")
    if family in (Projection.PSI_MINUS, Projection.PSI_PLUS, Projection.ANTI_SYMMETRIC):
        return (d - 1) / (2 * d)
    if family is Projection.PHI:
        return 1 / d
    return (d + 1) / (2 * d)


def conditional_density(mask: ObjectMask, family: Projection) -> DensityMatrix:
    """Unnormalized state of photon D heralded on photon A and the family.

    Computed by full contraction: the masked four-photon state is projected
    onto every family member and photon A is traced out. The trace equals
    the heralded event probability, and the diagonal reproduces the
    analytic image. Dimension is capped by the dense-tensor limit.
    """
    state = apply_object_mask(build_initial_state(mask.d), mask)
    if not isinstance(family, Projection):
        raise ValueError(f"expected a Projection member, got {family!r}")
    projectors = enumerate_projectors(mask.d, (family,))
    stacked = np.stack([project_bc(state, p).amplitudes for p in projectors])
    rho = np.einsum("pad,pae->de", stacked, stacked.conj())
    return DensityMatrix(rho)


def analytic_contrast(d: int, budget: int, family: Projection) -> ContrastValue:
    """Closed-form contrast for a mask with the given budget.

    Negative for the anti-symmetric family, -1 / (budget (d - 1)), and
    positive for the symmetric aggregate, +1 / (budget (d + 1)). Budgets of
    0 or d leave no bright or no dark pixels and have no defined contrast.
    """
    d = validate_dimension(d)
    if not isinstance(budget, (int, np.integer)) or isinstance(budget, bool):
        raise ValueError(f"budget must be an integer, got {budget!r}")
    budget = int(budget)
    if not 0 <= budget <= d:
        raise ValueError(f"budget {budget} outside 0..{d}")
    if budget in (0, d):
        raise DegenerateMaskError(
            f"budget {budget} of {d} pixels leaves no contrast to measure"
        )
    if not isinstance(family, Projection):
        raise ValueError(f"expected a Projection member, got {family!r}")
    if family in (Projection.PSI_MINUS, Projection.PSI_PLUS, Projection.ANTI_SYMMETRIC):
        value = -1.0 / (budget * (d - 1))
    elif family is Projection.PHI:
        value = 1.0 / budget
    else:
        value = 1.0 / (budget * (d + 1))
    return ContrastValue(value, 0.0)


def contrast_of_image(image: Image | np.ndarray, mask: ObjectMask) -> ContrastValue:
    """Contrast of per-pixel values against a mask.

    value = (mean over bright pixels - mean over dark pixels) / total.
    The sigma is 0; counting uncertainty belongs to estimators that know
    the noise model of their input.
    """
    values = image.pixels if isinstance(image, Image) else np.asarray(image, dtype=float)
    if values.ndim != 1:
        raise ValueError(f"expected a 1-D pixel vector, got shape {values.shape}")
    if values.size != mask.d:
        raise ValueError(f"image has {values.size} pixels but mask has {mask.d}")
    if mask.is_degenerate:
        raise DegenerateMaskError(
            f"mask budget {mask.budget} of {mask.d} pixels leaves no contrast to measure"
        )
    total = float(values.sum())
    if total <= 0.0:
        raise ValueError("image total is zero; contrast is undefined")
    bright = mask.as_array() == 1
    value = (values[bright].mean() - values[~bright].mean()) / total
    return ContrastValue(float(value), 0.0)
