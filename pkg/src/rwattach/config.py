"""Experiment configuration: JSON file plus command-line overrides."""

import json
from dataclasses import asdict, dataclass, field, fields

from .coloring import bipartite_2color, directed_kcolor
from .graph import GraphError, build_g0

RULES = ("fixed_walk", "bernoulli_walk", "preferential", "uniform")
COLORINGS = ("off", "bipartite", "kcolor")


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    g0: str
    steps: int
    rule: str = "fixed_walk"
    l: int = 1  # noqa: E741  (walk length; matches the --l flag)
    p: float | None = None
    replicas: int = 1
    seed: int = 0
    coloring: str = "off"
    k: int | None = None
    degrees: bool = False
    keep_samples: bool = False
    checkpoints: list = field(default_factory=list)
    out: str | None = None
    threads: int | None = None

    def to_dict(self):
        return asdict(self)


KEYS = {f.name for f in fields(ExperimentConfig)}
REQUIRED = ("g0", "steps")


def parse_config(path=None, overrides=None):
    """Merge a JSON config file with ``overrides`` (non-None values win) and validate."""
    values = {}
    if path is not None:
        try:
            with open(path, encoding="utf-8") as fh:
                values = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: not valid JSON ({exc})") from None
        if not isinstance(values, dict):
            raise ConfigError(f"{path}: top level must be an object")
    for key, value in (overrides or {}).items():
        if value is not None:
            values[key] = value
    unknown = sorted(set(values) - KEYS)
    if unknown:
        raise ConfigError(f"unknown config key(s): {', '.join(unknown)}")
    missing = [k for k in REQUIRED if k not in values]
    if missing:
        raise ConfigError(f"missing required field(s): {', '.join(missing)}")
    cfg = ExperimentConfig(**values)
    validate(cfg)
    return cfg


def validate(cfg):
    def need_int(name, lo):
        v = getattr(cfg, name)
        if isinstance(v, bool) or not isinstance(v, int) or v < lo:
            raise ConfigError(f"{name} must be an integer >= {lo}, got {v!r}")

    need_int("steps", 1)
    need_int("replicas", 1)
    need_int("l", 0)
    if isinstance(cfg.seed, bool) or not isinstance(cfg.seed, int) or not 0 <= cfg.seed < 2**64:
        raise ConfigError(f"seed must be a 64-bit unsigned integer, got {cfg.seed!r}")
    if cfg.rule not in RULES:
        raise ConfigError(f"rule must be one of {', '.join(RULES)}, got {cfg.rule!r}")
    if cfg.rule == "bernoulli_walk":
        if cfg.p is None:
            raise ConfigError("rule bernoulli_walk requires p")
    if cfg.p is not None and not 0.0 <= float(cfg.p) <= 1.0:
        raise ConfigError(f"probability out of range: p={cfg.p}")
    if cfg.coloring not in COLORINGS:
        raise ConfigError(f"coloring must be one of {', '.join(COLORINGS)}, got {cfg.coloring!r}")
    if cfg.threads is not None:
        need_int("threads", 1)
    if any(isinstance(c, bool) or not isinstance(c, int) or not 1 <= c <= cfg.steps
           for c in cfg.checkpoints):
        raise ConfigError(f"checkpoints must be integers in 1..steps, got {cfg.checkpoints!r}")
    if cfg.coloring == "kcolor":
        if cfg.k is None or cfg.k < 2:
            raise ConfigError(f"coloring kcolor requires k >= 2, got {cfg.k!r}")
        if cfg.rule != "fixed_walk":
            raise ConfigError("coloring kcolor supports only rule fixed_walk")
    try:
        load_initial(cfg)
    except GraphError as exc:
        raise ConfigError(f"g0 {cfg.g0!r}: {exc}") from None


def load_initial(cfg):
    """Build ``(graph, coloring-or-None)`` for ``cfg``; raises GraphError."""
    directed = cfg.coloring == "kcolor"
    g = build_g0(cfg.g0, directed=directed)
    if cfg.coloring == "bipartite":
        return g, bipartite_2color(g)
    if directed:
        return g, directed_kcolor(g, cfg.k)
    return g, None
