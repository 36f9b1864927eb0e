"""Server configuration: layout physics, palette, canvas, settle policy."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from ..colors import BASE_PALETTE
from ..errors import SchemaViolation
from ..force_layout import LayoutParams


@dataclass(frozen=True)
class ServerConfig:
    layout: LayoutParams = field(default_factory=LayoutParams)
    palette: tuple[str, ...] = BASE_PALETTE
    canvas: tuple[float, float] = (800.0, 600.0)
    settle_eps: float = 0.5
    settle_max_steps: int = 150
    abbreviation_length: int = 12

    @classmethod
    def from_file(cls, path: str | Path) -> "ServerConfig":
        try:
            raw = json.loads(Path(path).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise SchemaViolation(f"config file is not valid JSON: {exc}")
        return cls.from_json(raw)

    @classmethod
    def from_json(cls, raw: dict) -> "ServerConfig":
        if not isinstance(raw, dict):
            raise SchemaViolation("config must be a JSON object")
        kwargs: dict = {}
        if "layout" in raw:
            if not isinstance(raw["layout"], dict):
                raise SchemaViolation("config 'layout' must be an object")
            try:
                kwargs["layout"] = LayoutParams(**raw["layout"])
            except (TypeError, ValueError) as exc:
                raise SchemaViolation(f"bad layout params: {exc}")
        if "palette" in raw:
            palette = raw["palette"]
            if (not isinstance(palette, list) or not palette
                    or not all(isinstance(c, str) for c in palette)):
                raise SchemaViolation("config 'palette' must be a non-empty "
                                      "list of color strings")
            kwargs["palette"] = tuple(palette)
        if "canvas" in raw:
            canvas = raw["canvas"]
            if (not isinstance(canvas, list) or len(canvas) != 2
                    or not all(isinstance(v, (int, float)) for v in canvas)
                    or min(canvas) <= 0):
                raise SchemaViolation("config 'canvas' must be [width, "
                                      "height] with positive values")
            kwargs["canvas"] = (float(canvas[0]), float(canvas[1]))
        for key in ("settle_eps", "settle_max_steps", "abbreviation_length"):
            if key in raw:
                value = raw[key]
                if not isinstance(value, (int, float)) or value <= 0:
                    raise SchemaViolation(f"config '{key}' must be positive")
                kwargs[key] = value
        for key in ("settle_max_steps", "abbreviation_length"):
            if key in kwargs:
                kwargs[key] = int(kwargs[key])
        return cls(**kwargs)
