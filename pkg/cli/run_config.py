"""
Validated per-invocation configuration for the convopoly CLI.
"""

from dataclasses import dataclass
from pathlib import Path

from convopoly.errors import InvalidArgumentError

SUBCOMMANDS = ("corners", "verify", "reconstruct", "decompose", "project")
KINDS = ("diff", "sum")
FORMATS = ("json", "csv")


@dataclass
class RunConfig:
    """Everything a subcommand needs, after argument parsing."""

    subcommand: str
    d: int | None = None
    kind: str = "diff"
    n: int | None = None
    n_range: tuple[int, int] | None = None
    points: tuple[int, ...] | None = None
    elements: tuple[int, ...] | None = None
    raw: bool = False
    emit_graph: bool = False
    cap_cycles: int | None = None
    max_d: int | None = None
    workers: int | None = None
    fmt: str = "json"
    out: Path | None = None
    seed: int = 0
    lambdas_path: Path | None = None
    from_path: Path | None = None

    @property
    def n_values(self) -> list[int]:
        if self.n_range is not None:
            lo, hi = self.n_range
            return list(range(lo, hi + 1))
        return [self.n] if self.n is not None else []


class RunConfigValidator:
    """
    Check a RunConfig before dispatch.

    Each subcommand has its own required fields; shared checks cover d,
    kind, caps and the x-points.
    """

    REQUIRED = {
        "corners": ("d",),
        "verify": ("d",),
        "reconstruct": ("d", "n", "lambdas_path"),
        "decompose": ("d", "n", "elements"),
        "project": ("points",),
    }

    def validate(self, cfg: RunConfig) -> tuple[bool, str]:
        """
        Validate a configuration.

        Args:
            cfg: Parsed configuration

        Returns:
            Tuple of (is_valid, error_message)
        """
        if cfg.subcommand not in SUBCOMMANDS:
            return False, f"Unknown subcommand '{cfg.subcommand}'"

        for name in self.REQUIRED[cfg.subcommand]:
            if getattr(cfg, name) is None:
                flag = "--" + name.replace("_path", "").replace("_", "-")
                return False, f"'{cfg.subcommand}' needs {flag}"

        if cfg.subcommand == "verify" and not cfg.n_values:
            return False, "'verify' needs --n or --n-range"

        if cfg.kind not in KINDS:
            return False, f"Kind must be one of {', '.join(KINDS)}"
        if cfg.fmt not in FORMATS:
            return False, f"Format must be one of {', '.join(FORMATS)}"
        if cfg.d is not None and cfg.d < 1:
            return False, f"d must be at least 1, got {cfg.d}"

        for name in ("cap_cycles", "max_d", "workers"):
            value = getattr(cfg, name)
            if value is not None and value < 1:
                return False, f"--{name.replace('_', '-')} must be positive"

        if cfg.n is not None and cfg.n < 1:
            return False, f"N must be positive, got {cfg.n}"
        if cfg.n_range is not None:
            lo, hi = cfg.n_range
            if lo < 1 or hi < lo:
                return False, f"Invalid N range {lo}:{hi}"

        if cfg.points is not None:
            is_valid, error = self._check_points(cfg)
            if not is_valid:
                return False, error

        return True, ""

    def _check_points(self, cfg: RunConfig) -> tuple[bool, str]:
        points = cfg.points
        if not points:
            return False, "--points needs at least one value"
        if points[0] < 1:
            return False, "--points values must be positive"
        if any(b <= a for a, b in zip(points, points[1:])):
            return False, f"--points {','.join(map(str, points))} is not strictly increasing"
        if cfg.subcommand == "verify" and cfg.d is not None and len(points) != cfg.d:
            return False, f"--points has {len(points)} values but d={cfg.d}"
        return True, ""

    def validate_and_raise(self, cfg: RunConfig) -> None:
        """
        Validate a configuration and raise if invalid.

        Raises:
            InvalidArgumentError: If the configuration is invalid
        """
        is_valid, error = self.validate(cfg)
        if not is_valid:
            raise InvalidArgumentError(f"Invalid arguments: {error}")
