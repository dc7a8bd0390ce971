"""JSON job descriptions for imaging campaigns and delay scans.

Both loaders reject unknown keys outright; a silently ignored typo in a
config file costs more debugging time than a hard error. All parsing
failures raise ConfigError, which the command line maps to exit code 2.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ghostswap.coincidence import CampaignConfig
from ghostswap.errors import ConfigError
from ghostswap.hilbert import ObjectMask, Projection

__all__ = [
    "ImageJob",
    "HomJob",
    "load_image_job",
    "load_hom_job",
]

_MASK_PRESETS = ("half_on", "quadrant_on")


def _load_object(path: str | Path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as error:
        raise ConfigError(f"cannot read {path}: {error}") from error
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as error:
        raise ConfigError(f"{path} is not valid JSON: {error}") from error
    if not isinstance(payload, dict):
        raise ConfigError(f"{path} must contain a JSON object at the top level")
    return payload


def _check_keys(payload: dict, allowed: set[str], what: str) -> None:
    unknown = sorted(set(payload) - allowed)
    if unknown:
        raise ConfigError(f"unknown {what} keys: {', '.join(unknown)}")


def _get_int(payload: dict, key: str, default: int | None = None) -> int | None:
    if key not in payload:
        return default
    value = payload[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{key} must be an integer, got {value!r}")
    return value


def _get_number(payload: dict, key: str, default: float | None = None) -> float | None:
    if key not in payload:
        return default
    value = payload[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{key} must be a number, got {value!r}")
    return float(value)


def _get_str(payload: dict, key: str, default: str | None = None) -> str | None:
    if key not in payload:
        return default
    value = payload[key]
    if not isinstance(value, str):
        raise ConfigError(f"{key} must be a string, got {value!r}")
    return value


def _require(payload: dict, key: str) -> object:
    if key not in payload:
        raise ConfigError(f"missing required key {key!r}")
    return payload[key]


def _parse_dimension(payload: dict) -> int:
    d = _require(payload, "dimension")
    if isinstance(d, bool) or not isinstance(d, int):
        raise ConfigError(f"dimension must be an integer, got {d!r}")
    if d < 2:
        raise ConfigError(f"dimension must be at least 2, got {d}")
    return d


def _parse_mask(spec: object, d: int, key: str) -> tuple[ObjectMask, str | None]:
    """Mask from an explicit 0/1 list or a named preset."""
    if isinstance(spec, str):
        if spec not in _MASK_PRESETS:
            raise ConfigError(
                f"{key} preset must be one of {_MASK_PRESETS}, got {spec!r}"
            )
        try:
            preset = getattr(ObjectMask, spec)(d)
        except ValueError as error:
            raise ConfigError(f"{key}: {error}") from error
        return preset, spec
    if isinstance(spec, list):
        if len(spec) != d:
            raise ConfigError(
                f"{key} has {len(spec)} entries but dimension is {d}"
            )
        try:
            return ObjectMask.from_values(spec), None
        except ValueError as error:
            raise ConfigError(f"{key}: {error}") from error
    raise ConfigError(f"{key} must be a 0/1 list or a preset name, got {spec!r}")


def _parse_seed(payload: dict) -> int:
    seed = _get_int(payload, "seed", 0)
    if seed < 0:
        raise ConfigError(f"seed must be nonnegative, got {seed}")
    return seed


@dataclass(frozen=True)
class ImageJob:
    """Parsed description of one imaging campaign."""

    mask: ObjectMask
    family: Projection
    mode: str
    total: float
    accidental_fraction: float
    seed: int
    out_dir: str | None
    mask_preset: str | None

    @property
    def square_layout(self) -> bool:
        """Quadrant masks live on a square grid; everything else is a strip."""
        return self.mask_preset == "quadrant_on"

    def campaign_config(self) -> CampaignConfig:
        return CampaignConfig(
            mask=self.mask,
            family=self.family,
            mode=self.mode,
            total=self.total,
            accidental_fraction=self.accidental_fraction,
            seed=self.seed,
        )


_IMAGE_KEYS = {
    "dimension",
    "mask",
    "family",
    "mode",
    "expected_total",
    "shots",
    "accidental_fraction",
    "seed",
    "out_dir",
}


def load_image_job(path: str | Path) -> ImageJob:
    payload = _load_object(path)
    _check_keys(payload, _IMAGE_KEYS, "imaging job")
    d = _parse_dimension(payload)
    mask, preset = _parse_mask(_require(payload, "mask"), d, "mask")

    family_name = _require(payload, "family")
    if not isinstance(family_name, str):
        raise ConfigError(f"family must be a string, got {family_name!r}")
    try:
        family = Projection.from_name(family_name)
    except ValueError as error:
        raise ConfigError(str(error)) from error

    has_expected = "expected_total" in payload
    has_shots = "shots" in payload
    if has_expected == has_shots:
        raise ConfigError("give exactly one of expected_total or shots")
    implied_mode = "fixed_time" if has_expected else "fixed_shots"
    mode = _get_str(payload, "mode", implied_mode)
    if mode not in ("fixed_time", "fixed_shots"):
        raise ConfigError(f"mode must be fixed_time or fixed_shots, got {mode!r}")
    if mode != implied_mode:
        key = "expected_total" if has_expected else "shots"
        raise ConfigError(f"mode {mode!r} does not go with {key}")
    if has_expected:
        total = _get_number(payload, "expected_total")
    else:
        total = float(_get_int(payload, "shots"))
    if not np.isfinite(total) or total <= 0:
        raise ConfigError(f"event total must be positive, got {total}")

    fraction = _get_number(payload, "accidental_fraction", 0.0)
    if not 0.0 <= fraction < 1.0:
        raise ConfigError(
            f"accidental_fraction must lie in [0, 1), got {fraction}"
        )

    return ImageJob(
        mask=mask,
        family=family,
        mode=mode,
        total=total,
        accidental_fraction=fraction,
        seed=_parse_seed(payload),
        out_dir=_get_str(payload, "out_dir"),
        mask_preset=preset,
    )


@dataclass(frozen=True)
class HomJob:
    """Parsed description of one interference delay scan."""

    pattern_a: ObjectMask
    pattern_d: ObjectMask
    delays: np.ndarray
    dip_width: float
    shots_per_delay: int | None
    seed: int
    out_dir: str | None


_HOM_KEYS = {
    "dimension",
    "pattern_a",
    "pattern_d",
    "delays",
    "dip_width",
    "shots_per_delay",
    "seed",
    "out_dir",
}


def _parse_delays(spec: object) -> np.ndarray:
    if isinstance(spec, list):
        if not spec:
            raise ConfigError("delays list is empty")
        for value in spec:
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ConfigError(f"delays must be numbers, got {value!r}")
        return np.asarray(spec, dtype=float)
    if isinstance(spec, dict):
        _check_keys(spec, {"start", "stop", "count"}, "delay grid")
        start = _get_number(spec, "start")
        stop = _get_number(spec, "stop")
        count = _get_int(spec, "count")
        if start is None or stop is None or count is None:
            raise ConfigError("delay grid needs start, stop, and count")
        if count < 1:
            raise ConfigError(f"delay grid count must be positive, got {count}")
        return np.linspace(start, stop, count)
    raise ConfigError(f"delays must be a list or a start/stop/count grid, got {spec!r}")


def load_hom_job(path: str | Path) -> HomJob:
    payload = _load_object(path)
    _check_keys(payload, _HOM_KEYS, "delay scan job")
    d = _parse_dimension(payload)
    pattern_a, _ = _parse_mask(_require(payload, "pattern_a"), d, "pattern_a")
    pattern_d, _ = _parse_mask(_require(payload, "pattern_d"), d, "pattern_d")
    for name, pattern in (("pattern_a", pattern_a), ("pattern_d", pattern_d)):
        if pattern.budget == 0:
            raise ConfigError(f"{name} transmits nothing; at least one pixel must be on")

    delays = _parse_delays(_require(payload, "delays"))
    dip_width = _get_number(payload, "dip_width")
    if dip_width is None:
        raise ConfigError("missing required key 'dip_width'")
    if not np.isfinite(dip_width) or dip_width <= 0:
        raise ConfigError(f"dip_width must be positive, got {dip_width}")

    shots = _get_int(payload, "shots_per_delay")
    if shots is not None and shots <= 0:
        raise ConfigError(f"shots_per_delay must be positive, got {shots}")

    return HomJob(
        pattern_a=pattern_a,
        pattern_d=pattern_d,
        delays=delays,
        dip_width=dip_width,
        shots_per_delay=shots,
        seed=_parse_seed(payload),
        out_dir=_get_str(payload, "out_dir"),
    )
