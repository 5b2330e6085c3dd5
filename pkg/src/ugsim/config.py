# Scenario configuration: defaults matching the five-user reference setup,
# plus a small sectioned key=value file format with line-anchored errors.

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional

from .mac import FrameConfig
from .traffic import UserProfile

DEFAULT_THRESHOLDS = [0.10, 0.20, 0.30, 0.40, 0.50]


def default_users(loss_threshold: float = 0.10) -> List[UserProfile]:
    """Five reference users: 200-byte packets, 1500/1000/1000/1000/1500 us
    initial intervals (133,333 / 200,000 B/s), minimums 120,000 / 150,000 B/s."""
    rows = [
        (1, 133_333, 120_000),
        (2, 200_000, 150_000),
        (3, 200_000, 150_000),
        (4, 200_000, 150_000),
        (5, 133_333, 120_000),
    ]
    return [UserProfile(uid, 200, init, minimum, loss_threshold)
            for uid, init, minimum in rows]


@dataclass
class ScenarioConfig:
    sim_time: float = 200.0                 # seconds
    users: List[UserProfile] = field(default_factory=default_users)
    frame: FrameConfig = field(default_factory=FrameConfig)
    scheduler: str = "baseline"             # baseline | qoe
    thresholds: List[float] = field(default_factory=lambda: list(DEFAULT_THRESHOLDS))
    epoch: float = 1.0                      # seconds per controller decision
    decrease_factor: float = 0.9
    increase_step: Optional[float] = None   # B/s; None -> 5% of each user's minimum
    seed: int = 0                           # reserved; current runs are deterministic

    def validate(self) -> None:
        if not self.users:
            raise ConfigError("at least one user is required")
        if self.sim_time <= 0:
            raise ConfigError("sim_time must be positive")
        if self.epoch <= 0:
            raise ConfigError("epoch must be positive")
        if self.scheduler not in ("baseline", "qoe"):
            raise ConfigError(f"unknown scheduler '{self.scheduler}'")
        if not self.thresholds:
            raise ConfigError("thresholds must be non-empty")
        for t in self.thresholds:
            if not 0.0 < t <= 1.0:
                raise ConfigError("threshold out of range (must be in (0, 1])")
        if not 0.0 < self.decrease_factor < 1.0:
            raise ConfigError("decrease_factor must be in (0, 1)")
        if self.increase_step is not None and self.increase_step <= 0:
            raise ConfigError("increase_step must be positive")
        seen = set()
        for u in self.users:
            if u.user_id in seen:
                raise ConfigError(f"duplicate user id {u.user_id}")
            seen.add(u.user_id)


class ConfigError(ValueError):
    """Configuration rejected; message carries the offending line when known."""


_SCENARIO_KEYS = {"sim_time", "scheduler", "thresholds", "epoch",
                  "decrease_factor", "increase_step", "seed"}
_FRAME_KEYS = {"duration_us", "capacity_bytes", "queue_limit"}
_USER_KEYS = {"packet_size", "initial_rate", "min_rate"}
_SECTION_RE = re.compile(r"^\[\s*([^\]]+?)\s*\]$")
_USER_SECTION_RE = re.compile(r"^user\s+(\d+)$")


def _parse_number(text: str, lineno: int, key: str, kind: type) -> float:
    try:
        return kind(text)
    except ValueError:
        raise ConfigError(f"line {lineno}: invalid value for '{key}': {text!r}") from None


def parse_config(text: str, source: str = "<config>") -> ScenarioConfig:
    """Parse the sectioned key=value grammar; unknown sections/keys rejected.

    An empty file yields the full default scenario. Any [user N] section
    replaces the default user set entirely.
    """
    scenario: Dict[str, str] = {}
    frame: Dict[str, str] = {}
    users: Dict[int, Dict[str, str]] = {}
    current: Optional[Dict[str, str]] = None
    allowed_keys: set = set()
    section_name = ""

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _SECTION_RE.match(line)
        if m:
            section_name = m.group(1).lower()
            um = _USER_SECTION_RE.match(section_name)
            if section_name == "scenario":
                current, allowed_keys = scenario, _SCENARIO_KEYS
            elif section_name == "frame":
                current, allowed_keys = frame, _FRAME_KEYS
            elif um:
                current = users.setdefault(int(um.group(1)), {})
                allowed_keys = _USER_KEYS
            else:
                raise ConfigError(f"{source}: line {lineno}: unknown section [{section_name}]")
            continue
        if "=" not in line:
            raise ConfigError(f"{source}: line {lineno}: expected 'key = value', got {raw.strip()!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if current is None:
            raise ConfigError(f"{source}: line {lineno}: key '{key}' outside any section")
        if key not in allowed_keys:
            raise ConfigError(f"{source}: line {lineno}: unknown key '{key}' in section [{section_name}]")
        if key in current:
            raise ConfigError(f"{source}: line {lineno}: duplicate key '{key}'")
        current[key] = f"{lineno}:{value}"

    def take(table: Dict[str, str], key: str, kind: type, default):
        if key not in table:
            return default
        lineno, _, value = table[key].partition(":")
        return _parse_number(value, int(lineno), key, kind)

    cfg = ScenarioConfig()
    cfg.sim_time = take(scenario, "sim_time", float, cfg.sim_time)
    cfg.epoch = take(scenario, "epoch", float, cfg.epoch)
    cfg.decrease_factor = take(scenario, "decrease_factor", float, cfg.decrease_factor)
    cfg.increase_step = take(scenario, "increase_step", float, cfg.increase_step)
    cfg.seed = take(scenario, "seed", int, cfg.seed)
    if "scheduler" in scenario:
        cfg.scheduler = scenario["scheduler"].partition(":")[2]
    if "thresholds" in scenario:
        lineno, _, value = scenario["thresholds"].partition(":")
        cfg.thresholds = [
            _parse_number(part.strip(), int(lineno), "thresholds", float)
            for part in value.split(",") if part.strip()
        ]

    cfg.frame = FrameConfig(
        frame_duration_us=int(take(frame, "duration_us", int, cfg.frame.frame_duration_us)),
        uplink_capacity=int(take(frame, "capacity_bytes", int, cfg.frame.uplink_capacity)),
        per_flow_queue_limit=int(take(frame, "queue_limit", int, cfg.frame.per_flow_queue_limit)),
    )

    if users:
        built = []
        for uid in sorted(users):
            table = users[uid]
            for key in _USER_KEYS:
                if key not in table:
                    raise ConfigError(f"{source}: [user {uid}] missing key '{key}'")
            built.append(UserProfile(
                user_id=uid,
                packet_size=int(take(table, "packet_size", int, 0)),
                initial_rate=take(table, "initial_rate", float, 0.0),
                min_subjective_rate=take(table, "min_rate", float, 0.0),
                loss_threshold=0.10,  # installed per run variant
            ))
        cfg.users = built

    cfg.validate()
    return cfg


def load_config(path: str) -> ScenarioConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    return parse_config(text, source=path)


def users_with_threshold(users: List[UserProfile], threshold: float) -> List[UserProfile]:
    return [replace(u, loss_threshold=threshold) for u in users]
