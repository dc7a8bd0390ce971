"""ghostctl: imaging campaigns, family panels, delay scans, contrast curves.

Exit codes: 0 on success, 2 for configuration problems, 3 when a mask
has no bright or no dark pixels so contrast is undefined, 4 when the
closed-form family identities fail to hold (which would mean the library
itself is inconsistent).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from ghostswap.analytic import (
    add_images,
    analytic_contrast,
    analytic_image,
)
from ghostswap.coincidence import hom_scan, sample_campaign
from ghostswap.configfile import load_hom_job, load_image_job
from ghostswap.errors import ConfigError, DegenerateMaskError, ImageConsistencyError
from ghostswap.hilbert import ObjectMask, Projection
from ghostswap.io import (
    csv_text,
    image_layout,
    write_csv,
    write_image_records,
    write_json,
    write_pgm,
)

__all__ = ["main", "run"]

FIGURE_STEMS = ("psi_minus", "psi_plus", "phi", "anti_symmetric", "symmetric", "sum")


def _out_dir(flag: str | None, config_dir: str | None) -> Path:
    path = Path(flag or config_dir or ".")
    path.mkdir(parents=True, exist_ok=True)
    return path


def _effective_seed(flag: int | None, config_seed: int) -> int:
    if flag is None:
        return config_seed
    if flag < 0:
        raise ConfigError(f"seed must be nonnegative, got {flag}")
    return flag


def _contrast_entry(contrast) -> dict | None:
    if contrast is None:
        return None
    return {"value": contrast.value, "sigma": contrast.sigma}


def cmd_image(args: argparse.Namespace) -> int:
    job = load_image_job(args.config)
    seed = _effective_seed(args.seed, job.seed)
    if job.mask.is_degenerate:
        raise DegenerateMaskError(
            f"mask budget {job.mask.budget} of {job.mask.d} pixels "
            "leaves no contrast to measure"
        )
    analytic = analytic_image(job.mask, job.family)
    predicted = analytic_contrast(job.mask.d, job.mask.budget, job.family)

    result = None
    if not args.analytic_only:
        config = replace(job.campaign_config(), seed=seed)
        result = sample_campaign(config)

    out = _out_dir(args.out_dir, job.out_dir)
    layout = image_layout(job.mask.d, square=job.square_layout)
    height, width = layout

    sampled = None if result is None else result.counts.pixels
    corrected = None
    if result is not None:
        corrected = np.clip(
            sampled.astype(float) - result.accidental_estimate, 0.0, None
        )
    write_image_records(out / "image_records.csv", analytic.pixels, sampled, corrected)

    scales = {"analytic": write_pgm(out / "analytic.pgm", analytic.pixels, layout)}
    files = ["image_records.csv", "analytic.pgm", "summary.json"]
    if sampled is not None:
        scales["sampled"] = write_pgm(
            out / "sampled.pgm", sampled.astype(float), layout
        )
        files.insert(2, "sampled.pgm")

    summary = {
        "command": "image",
        "dimension": job.mask.d,
        "mask": list(job.mask.values),
        "mask_preset": job.mask_preset,
        "budget": job.mask.budget,
        "family": job.family.value,
        "mode": job.mode,
        "total": job.total,
        "accidental_fraction": job.accidental_fraction,
        "seed": seed,
        "analytic_only": bool(args.analytic_only),
        "layout": {"height": height, "width": width, "origin": "bottom-left"},
        "pgm_scale": scales,
        "contrast": {
            "analytic": _contrast_entry(predicted),
            "raw": _contrast_entry(result.raw_contrast if result else None),
            "corrected": _contrast_entry(result.corrected_contrast if result else None),
        },
        "files": sorted(files),
    }
    write_json(out / "summary.json", summary)
    print(f"image: wrote {len(files)} files to {out}")
    return 0


def _figure_mask(args: argparse.Namespace) -> ObjectMask:
    d = args.dimension
    if d < 2:
        raise ConfigError(f"dimension must be at least 2, got {d}")
    if args.mask is not None:
        try:
            values = json.loads(Path(args.mask).read_text(encoding="utf-8"))
        except OSError as error:
            raise ConfigError(f"cannot read {args.mask}: {error}") from error
        except json.JSONDecodeError as error:
            raise ConfigError(f"{args.mask} is not valid JSON: {error}") from error
        if not isinstance(values, list) or len(values) != d:
            raise ConfigError(f"mask file must hold a list of {d} entries")
        try:
            mask = ObjectMask.from_values(values)
        except ValueError as error:
            raise ConfigError(str(error)) from error
        if args.budget is not None and args.budget != mask.budget:
            raise ConfigError(
                f"--budget {args.budget} conflicts with mask budget {mask.budget}"
            )
        return mask
    budget = args.budget
    if budget is None:
        raise ConfigError("give --budget or --mask")
    if not 0 <= budget <= d:
        raise ConfigError(f"budget {budget} outside 0..{d}")
    return ObjectMask.from_values([1] * budget + [0] * (d - budget))


def cmd_figure2(args: argparse.Namespace) -> int:
    """Panel of all five family images for one mask, with identity checks."""
    mask = _figure_mask(args)
    d, budget = mask.d, mask.budget
    images = {
        family.value: analytic_image(mask, family)
        for family in (
            Projection.PSI_MINUS,
            Projection.PSI_PLUS,
            Projection.PHI,
            Projection.ANTI_SYMMETRIC,
            Projection.SYMMETRIC,
        )
    }
    images["sum"] = add_images(
        images["anti_symmetric"], images["symmetric"]
    )

    # the closed forms promise these at the integer level; a breach means
    # the library is internally inconsistent, not that the input is bad
    identities = {
        "anti_symmetric_equals_psi_minus": bool(
            np.array_equal(
                images["anti_symmetric"].numerators, images["psi_minus"].numerators
            )
        ),
        "symmetric_equals_psi_plus_plus_phi": bool(
            np.array_equal(
                images["symmetric"].numerators,
                images["psi_plus"].numerators + images["phi"].numerators,
            )
        ),
        "sum_is_flat": bool(
            np.all(images["sum"].numerators == 2 * budget)
        ),
    }
    if not all(identities.values()):
        failed = ", ".join(name for name, ok in identities.items() if not ok)
        raise ImageConsistencyError(f"family identities failed: {failed}")

    out = _out_dir(args.out_dir, None)
    layout = image_layout(d)
    scales = {}
    for stem in FIGURE_STEMS:
        pixels = images[stem].pixels
        write_csv(
            out / f"{stem}.csv",
            ["pixel_index", "intensity"],
            [(k + 1, float(pixels[k])) for k in range(d)],
        )
        scales[stem] = write_pgm(out / f"{stem}.pgm", pixels, layout)

    contrast = None
    if not mask.is_degenerate:
        contrast = {
            family: _contrast_entry(analytic_contrast(d, budget, Projection.from_name(family)))
            for family in ("anti_symmetric", "symmetric", "phi")
        }

    summary = {
        "command": "figure2",
        "dimension": d,
        "budget": budget,
        "mask": list(mask.values),
        "denominator": 2 * d * d,
        "identities": identities,
        "pgm_scale": scales,
        "contrast": contrast,
        "files": sorted(
            [f"{stem}.csv" for stem in FIGURE_STEMS]
            + [f"{stem}.pgm" for stem in FIGURE_STEMS]
            + ["summary.json"]
        ),
    }
    write_json(out / "summary.json", summary)
    print(f"figure2: wrote {len(summary['files'])} files to {out}")
    return 0


def cmd_hom(args: argparse.Namespace) -> int:
    job = load_hom_job(args.config)
    seed = _effective_seed(args.seed, job.seed)
    scan = hom_scan(
        job.pattern_a,
        job.pattern_d,
        job.delays,
        job.dip_width,
        shots_per_delay=job.shots_per_delay,
        seed=seed,
    )
    out = _out_dir(args.out_dir, job.out_dir)
    rows = []
    for k in range(scan.delays.size):
        sampled = None if scan.sampled_counts is None else int(scan.sampled_counts[k])
        rows.append((float(scan.delays[k]), float(scan.rates[k]), sampled))
    write_csv(out / "hom_scan.csv", ["delay", "rate", "sampled_count"], rows)
    summary = {
        "command": "hom",
        "dimension": job.pattern_a.d,
        "pattern_a": list(job.pattern_a.values),
        "pattern_d": list(job.pattern_d.values),
        "antisymmetric_weight": scan.antisymmetric_weight,
        "dip_width": scan.dip_width,
        "shots_per_delay": job.shots_per_delay,
        "seed": seed,
        "files": ["hom_scan.csv", "summary.json"],
    }
    write_json(out / "summary.json", summary)
    print(f"hom: wrote 2 files to {out}")
    return 0


def cmd_contrast_curve(args: argparse.Namespace) -> int:
    """Closed-form contrast against dimension at a fixed mask budget."""
    if args.d_min < 2:
        raise ConfigError(f"--d-min must be at least 2, got {args.d_min}")
    if args.d_max < args.d_min:
        raise ConfigError(f"--d-max {args.d_max} is below --d-min {args.d_min}")
    if args.budget < 1:
        raise ConfigError(f"--budget must be at least 1, got {args.budget}")
    rows = []
    for d in range(args.d_min, args.d_max + 1):
        if args.budget >= d:
            # no dark pixels left at this dimension: contrast is undefined
            rows.append((d, None, None))
            continue
        negative = analytic_contrast(d, args.budget, Projection.ANTI_SYMMETRIC)
        positive = analytic_contrast(d, args.budget, Projection.SYMMETRIC)
        rows.append((d, negative.value, positive.value))
    header = ["dimension", "anti_symmetric", "symmetric"]
    if args.out is None:
        print(csv_text(header, rows), end="")
    else:
        write_csv(args.out, header, rows)
        print(f"contrast-curve: wrote {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ghostctl",
        description="Heralded ghost images, coincidence campaigns, and delay scans.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    image = commands.add_parser("image", help="run one imaging campaign from a job file")
    image.add_argument("config", help="JSON job description")
    image.add_argument("--seed", type=int, default=None, help="override the job seed")
    image.add_argument("--out-dir", default=None, help="override the job output directory")
    image.add_argument(
        "--analytic-only",
        action="store_true",
        help="skip sampling; write only the closed-form image",
    )
    image.set_defaults(handler=cmd_image)

    figure = commands.add_parser(
        "figure2", help="closed-form images of every family for one mask"
    )
    figure.add_argument("--dimension", type=int, required=True)
    figure.add_argument("--budget", type=int, default=None, help="bright pixels in the default mask")
    figure.add_argument("--mask", default=None, help="JSON file holding an explicit 0/1 mask")
    figure.add_argument("--out-dir", default=None)
    figure.set_defaults(handler=cmd_figure2)

    hom = commands.add_parser("hom", help="interference dip scan from a job file")
    hom.add_argument("config", help="JSON job description")
    hom.add_argument("--seed", type=int, default=None, help="override the job seed")
    hom.add_argument("--out-dir", default=None, help="override the job output directory")
    hom.set_defaults(handler=cmd_hom)

    curve = commands.add_parser(
        "contrast-curve", help="closed-form contrast against dimension"
    )
    curve.add_argument("--d-min", type=int, required=True)
    curve.add_argument("--d-max", type=int, required=True)
    curve.add_argument("--budget", type=int, required=True)
    curve.add_argument("--out", default=None, help="CSV path (stdout when omitted)")
    curve.set_defaults(handler=cmd_contrast_curve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except ConfigError as error:
        print(f"ghostctl: configuration error: {error}", file=sys.stderr)
        return 2
    except DegenerateMaskError as error:
        print(f"ghostctl: degenerate mask: {error}", file=sys.stderr)
        return 3
    except ImageConsistencyError as error:
        print(f"ghostctl: internal inconsistency: {error}", file=sys.stderr)
        return 4


def run() -> None:
    sys.exit(main())
