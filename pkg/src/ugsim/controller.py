# Per-user feedback loop: compare windowed packet-loss rate against the
# user's subjective threshold and steer the transmission rate toward the
# minimum subjective rate requirement.

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable

from .traffic import UserProfile


@dataclass(frozen=True)
class EpochObservation:
    sent: int
    lost: int

    def __post_init__(self) -> None:
        if not 0 <= self.lost <= max(self.sent, 0):
            raise ValueError("lost must be within [0, sent]")

    @property
    def loss_rate(self) -> float:
        return self.lost / self.sent if self.sent > 0 else 0.0


@dataclass
class ControllerState:
    flow_id: int
    current_rate: float
    min_subjective_rate: float
    loss_threshold: float
    decrease_factor: float
    increase_step: float
    rate_ceiling: float
    epoch_sent: int = 0
    epoch_lost: int = 0


def decide(state: ControllerState, obs: EpochObservation) -> float:
    """One rate decision: pure function of (state, observation).

    Over-threshold loss decreases the rate multiplicatively, clamped at the
    minimum subjective rate; under-threshold loss with a rate below the
    minimum increases it additively, clamped at min(minimum, ceiling).
    Equality with the threshold counts as "not greater" (hold/increase side).
    """
    if obs.loss_rate > state.loss_threshold:
        if state.current_rate > state.min_subjective_rate:
            return max(state.current_rate * state.decrease_factor,
                       state.min_subjective_rate)
        return state.current_rate
    if state.current_rate < state.min_subjective_rate:
        return min(state.current_rate + state.increase_step,
                   state.min_subjective_rate,
                   state.rate_ceiling)
    return state.current_rate


class RateController:
    """Holds one ControllerState per flow and applies decide() every epoch."""

    def __init__(self, profiles: Iterable[UserProfile],
                 decrease_factor: float = 0.9,
                 increase_step: float | None = None) -> None:
        # default increase step: 5% of the user's minimum subjective rate
        self.states: Dict[int, ControllerState] = {}
        for p in profiles:
            step = increase_step if increase_step is not None \
                else 0.05 * p.min_subjective_rate
            self.states[p.user_id] = ControllerState(
                flow_id=p.user_id,
                current_rate=float(p.initial_rate),
                min_subjective_rate=float(p.min_subjective_rate),
                loss_threshold=p.loss_threshold,
                decrease_factor=decrease_factor,
                increase_step=step,
                rate_ceiling=float(p.initial_rate),
            )

    def note_sent(self, flow_id: int) -> None:
        self.states[flow_id].epoch_sent += 1

    def note_lost(self, flow_id: int) -> None:
        self.states[flow_id].epoch_lost += 1

    def on_epoch(self) -> Dict[int, float]:
        """Apply decide() to every flow, reset epoch counters, return new rates."""
        new_rates: Dict[int, float] = {}
        for flow_id, st in self.states.items():
            obs = EpochObservation(sent=st.epoch_sent, lost=st.epoch_lost)
            st.current_rate = decide(st, obs)
            st.epoch_sent = 0
            st.epoch_lost = 0
            new_rates[flow_id] = st.current_rate
        return new_rates
