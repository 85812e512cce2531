from dataclasses import dataclass
from enum import Enum
from typing import Sequence, Union

import numpy as np

from stsig.base.utils import as_generator

MAX_PRIORITY = 7


class Action(str, Enum):
    ON = "on"
    OFF = "off"


@dataclass(frozen=True)
class OnOffDecision:
    """Whether a base station transmits on a resource, and for how many subframes the decision holds."""

    action: Action
    hold_subframes: int = 1

    def __post_init__(self) -> None:
        assert self.hold_subframes >= 1, f"A decision must hold for at least one subframe, got {self.hold_subframes}."

    @property
    def is_on(self) -> bool:
        return self.action is Action.ON


def _check_priority(priority: int) -> None:
    assert 0 <= priority <= MAX_PRIORITY, f"Priority must be in [0, {MAX_PRIORITY}], got {priority}."


def onoff_decide(
    own_priority: int,
    competitor_priorities: Sequence[int],
    rng: Union[None, int, np.random.Generator] = None,
    hold_subframes: int = 1,
) -> OnOffDecision:
    """ON/OFF power control on one resource.

    The base station yields (OFF) when a competing user it heard from has higher priority than its own
    user, keeps transmitting when its own priority is strictly highest, and tosses a fair coin on a tie.
    With no competitors it always transmits and no random draw is made.

    Args:
        own_priority (int): Priority of the base station's own user on this resource.
        competitor_priorities (Sequence[int]): Priorities in the ICRMs decoded for this resource.
        rng (Union[None, int, np.random.Generator]): Stream used for the tie-break coin.
        hold_subframes (int): Subframes the decision holds, F. Defaults to 1.

    Returns:
        OnOffDecision: The decision.
    """
    _check_priority(own_priority)
    for priority in competitor_priorities:
        _check_priority(priority)
    if len(competitor_priorities) == 0:
        return OnOffDecision(Action.ON, hold_subframes)

    strongest = max(competitor_priorities)
    if own_priority > strongest:
        action = Action.ON
    elif own_priority < strongest:
        action = Action.OFF
    else:
        action = Action.ON if as_generator(rng).random() < 0.5 else Action.OFF
    return OnOffDecision(action, hold_subframes)
