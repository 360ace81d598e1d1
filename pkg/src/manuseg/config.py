"""Pipeline configuration: one flat key=value file covering every tunable
threshold. Unknown keys are hard errors so threshold typos cannot silently
fall back to defaults."""

from __future__ import annotations

from dataclasses import dataclass, fields

from .linedetect import SmearParams
from .preprocess import FcmParams
from .textsep import SeparationParams


@dataclass(frozen=True)
class PipelineConfig:
    # preprocessing (FCM binarization)
    fuzzifier: float = 2.0
    fcm_tolerance: float = 1e-3
    fcm_max_iterations: int = 100
    # text/doodle separation
    density_threshold_t1: int = 20
    doodle_area_threshold: int = 3000
    doodle_density_fraction: float = 0.10
    strike_min_run: int = 120
    # line detection
    block_width_w: int = 20
    block_ink_threshold_t: int = 2
    gaussian_sigma: float = 1.0
    min_smear_area: int = 150
    valley_threshold_t2: int = 5
    overlap_height_ratio: float = 1.6
    # evaluation / shared
    iou_min: float = 0.5
    connectivity: int = 8

    def __post_init__(self):
        # Delegate range checks to the owning parameter types.
        self.fcm_params()
        self.separation_params()
        self.smear_params()
        if not 0 < self.iou_min <= 1:
            raise ValueError("iou_min must be in (0, 1]")
        if self.connectivity not in (4, 8):
            raise ValueError("connectivity must be 4 or 8")

    def fcm_params(self) -> FcmParams:
        return FcmParams(fuzzifier=self.fuzzifier, tolerance=self.fcm_tolerance,
                         max_iterations=self.fcm_max_iterations)

    def separation_params(self) -> SeparationParams:
        return SeparationParams(density_threshold_t1=self.density_threshold_t1,
                                doodle_area_threshold=self.doodle_area_threshold,
                                doodle_density_fraction=self.doodle_density_fraction,
                                strike_min_run=self.strike_min_run)

    def smear_params(self) -> SmearParams:
        return SmearParams(block_width_w=self.block_width_w,
                           block_ink_threshold_t=self.block_ink_threshold_t,
                           gaussian_sigma=self.gaussian_sigma,
                           min_smear_area=self.min_smear_area,
                           valley_threshold_t2=self.valley_threshold_t2,
                           overlap_height_ratio=self.overlap_height_ratio)


def parse_keyvalues(path) -> dict[str, str]:
    """Read a key=value file; '#' starts a comment, blank lines ignored."""
    raw: dict[str, str] = {}
    with open(path, "r", encoding="ascii") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            if not key or not value:
                raise ValueError(f"{path}:{lineno}: empty key or value")
            if key in raw:
                raise ValueError(f"{path}:{lineno}: duplicate key {key!r}")
            raw[key] = value
    return raw


def _coerce(cls, raw: dict[str, str]):
    types = {f.name: f.type for f in fields(cls)}
    kwargs = {}
    for key, value in raw.items():
        if key not in types:
            raise ValueError(f"unknown configuration key {key!r}")
        caster = float if types[key] in (float, "float") else int
        try:
            kwargs[key] = caster(value)
        except ValueError as exc:
            raise ValueError(f"bad value for {key!r}: {value!r}") from exc
    return cls(**kwargs)


def load_config(path) -> PipelineConfig:
    return _coerce(PipelineConfig, parse_keyvalues(path))


def write_config(config: PipelineConfig, path) -> None:
    """Write the effective configuration; load_config round-trips it."""
    with open(path, "w", encoding="ascii") as fh:
        for f in fields(config):
            fh.write(f"{f.name} = {getattr(config, f.name)!r}\n")
