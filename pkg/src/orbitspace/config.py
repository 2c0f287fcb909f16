"""YAML configuration files.

A minimal file names a built-in group::

    group: modular-torus

Everything else is optional::

    group:
      name: my-group
      generators:            # row-major (a, b, c, d), det must be 1 within 1e-6
        - [1, 1, 1, 2]
        - [1, -1, -1, 2]
    depth:
      lozenge: 8
      linking: 10
      oracle: 8
      annulus: 8
    partner_range: 3
    chain_length: 4
    tolerance: 1.0e-9
    render:
      width: 640
      height: 640
"""

from __future__ import annotations

from dataclasses import dataclass, field

import yaml

from .errors import ParseError, ValidationError
from .groups import BUILTIN, builtin_group
from .hyperbolic import DEFAULT_DEPTH_CAP, GroupSpec, projected_count
from .tolerance import DEFAULT_EPS

DET_TOLERANCE = 1e-6

DEFAULT_DEPTHS = {"lozenge": 8, "linking": 10, "oracle": 8, "annulus": 8}


@dataclass
class RenderOptions:
    width: int = 640
    height: int = 640


@dataclass
class Config:
    group: GroupSpec = field(default_factory=lambda: builtin_group("modular-torus"))
    depths: dict = field(default_factory=lambda: dict(DEFAULT_DEPTHS))
    partner_range: int = 3
    chain_length: int = 1
    tolerance: float = DEFAULT_EPS
    render: RenderOptions = field(default_factory=RenderOptions)
    depth_cap: int = DEFAULT_DEPTH_CAP

    def validate(self):
        for key, d in self.depths.items():
            if not isinstance(d, int) or d < 0:
                raise ValidationError(f"depth.{key} must be a non-negative integer, got {d!r}")
            if projected_count(self.group.rank, d) > self.depth_cap:
                raise ValidationError(f"depth.{key} = {d} exceeds the enumeration cap {self.depth_cap}")
        if self.partner_range < 1:
            raise ValidationError("partner_range must be at least 1")
        if self.chain_length < 1:
            raise ValidationError("chain_length must be at least 1")
        if not self.tolerance > 0:
            raise ValidationError("tolerance must be positive")
        return self


def group_from_spec(spec) -> GroupSpec:
    if isinstance(spec, str):
        if spec not in BUILTIN:
            raise ValidationError(f"unknown group {spec!r}; built-in groups: {', '.join(sorted(BUILTIN))}")
        return builtin_group(spec)
    if not isinstance(spec, dict) or "generators" not in spec:
        raise ValidationError("group must be a built-in name or a mapping with 'generators'")
    mats = []
    for i, row in enumerate(spec["generators"]):
        try:
            a, b, c, d = (float(x) for x in row)
        except (TypeError, ValueError):
            raise ValidationError(f"generator {i} must be four numbers, got {row!r}") from None
        det = a * d - b * c
        if abs(det - 1.0) > DET_TOLERANCE:
            raise ValidationError(f"generator {i} has determinant {det!r}, expected 1")
        mats.append((a, b, c, d))
    try:
        return GroupSpec.from_matrices(mats, name=str(spec.get("name", "custom")))
    except ValueError as exc:
        raise ValidationError(str(exc)) from None


def parse_config(text: str) -> Config:
    try:
        raw = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        if mark is not None:
            raise ParseError(str(getattr(exc, "problem", exc)), mark.line + 1, mark.column + 1) from None
        raise ParseError(str(exc)) from None
    if raw is None:
        raw = {}
    if not isinstance(raw, dict):
        raise ParseError("configuration must be a mapping")
    known = {"group", "depth", "partner_range", "chain_length", "tolerance", "render", "depth_cap"}
    unknown = set(raw) - known
    if unknown:
        raise ValidationError(f"unknown configuration keys: {', '.join(sorted(unknown))}")

    cfg = Config()
    if "group" in raw:
        cfg.group = group_from_spec(raw["group"])
    depth = raw.get("depth", {})
    if isinstance(depth, int):
        depth = {k: depth for k in DEFAULT_DEPTHS}
    if not isinstance(depth, dict) or set(depth) - set(DEFAULT_DEPTHS):
        raise ValidationError(f"depth must be an integer or a mapping over {sorted(DEFAULT_DEPTHS)}")
    cfg.depths.update(depth)
    for key in ("partner_range", "chain_length", "depth_cap"):
        if key in raw:
            setattr(cfg, key, raw[key])
    if "tolerance" in raw:
        cfg.tolerance = float(raw["tolerance"])
    render = raw.get("render", {}) or {}
    cfg.render = RenderOptions(**{k: int(v) for k, v in render.items() if k in ("width", "height")})
    return cfg.validate()


def load_config(path) -> Config:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())
