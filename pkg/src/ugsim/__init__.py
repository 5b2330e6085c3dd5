"""Frame-based UGS uplink simulator with QoE-driven rate adaptation."""

from .config import ConfigError, ScenarioConfig, default_users, load_config, parse_config
from .controller import ControllerState, EpochObservation, RateController, decide
from .kernel import Simulator, SchedulingInPastError, seconds_to_us
from .mac import ConnectionQueue, FrameConfig, FrameGrant, allocate_grants
from .metrics import FlowMetrics, MetricsCollector, mean_jitter
from .scenario import RunResult, run_scenario, run_single, run_sweep
from .traffic import CbrSource, Fate, Packet, UserProfile, emission_interval, generate

__all__ = [
    "ConfigError", "ScenarioConfig", "default_users", "load_config", "parse_config",
    "ControllerState", "EpochObservation", "RateController", "decide",
    "Simulator", "SchedulingInPastError", "seconds_to_us",
    "ConnectionQueue", "FrameConfig", "FrameGrant", "allocate_grants",
    "FlowMetrics", "MetricsCollector", "mean_jitter",
    "RunResult", "run_scenario", "run_single", "run_sweep",
    "CbrSource", "Fate", "Packet", "UserProfile", "emission_interval", "generate",
]
