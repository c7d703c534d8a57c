"""INI configuration for the command line.

Example::

    [diffnev]
    unit_gap_eps = 1e-9
    root_eps = 1e-8
    quadrature_nodes = 4096
    seed = 0
    r_min = 10
    r_max = 10000
    points = 4
    spacing = geometric
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field

from ..counting import geometric_grid
from ..poly import TolerancePolicy

__all__ = ["Config", "load_config", "ConfigError"]

SECTION = "diffnev"


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class Config:
    tol: TolerancePolicy = field(default_factory=TolerancePolicy)
    seed: int = 0
    r_min: float = 10.0
    r_max: float = 10000.0
    points: int = 4
    spacing: str = "geometric"

    def grid(self) -> list[float]:
        return geometric_grid(self.r_min, self.r_max, self.points)


def load_config(path: str | None = None, text: str | None = None) -> Config:
    if path is None and text is None:
        return Config()
    cp = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    try:
        if text is not None:
            cp.read_string(text)
        else:
            with open(path, encoding="utf-8") as fh:
                cp.read_file(fh)
    except (OSError, configparser.Error) as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    if not cp.has_section(SECTION):
        raise ConfigError(f"config needs a [{SECTION}] section")
    sec = cp[SECTION]
    known = {"unit_gap_eps", "root_eps", "quadrature_nodes", "seed", "r_min", "r_max", "points", "spacing"}
    unknown = set(sec) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    try:
        tol = TolerancePolicy(
            unit_gap_eps=sec.getfloat("unit_gap_eps", TolerancePolicy.unit_gap_eps),
            root_eps=sec.getfloat("root_eps", TolerancePolicy.root_eps),
            quadrature_nodes=sec.getint("quadrature_nodes", TolerancePolicy.quadrature_nodes),
        )
        cfg = Config(tol, sec.getint("seed", 0), sec.getfloat("r_min", 10.0), sec.getfloat("r_max", 10000.0),
                     sec.getint("points", 4), sec.get("spacing", "geometric"))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    if cfg.spacing != "geometric":
        raise ConfigError("only geometric spacing is supported")
    if not (0 < cfg.r_min <= cfg.r_max) or cfg.points < 1:
        raise ConfigError("grid needs 0 < r_min <= r_max and points >= 1")
    return cfg
