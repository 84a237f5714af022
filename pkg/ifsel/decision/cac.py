"""Call admission control between the UMTS macrocell and WLAN."""

import dataclasses
import enum
import logging
import math
from typing import Optional

from ifsel.decision.context import DecisionContext, PolicyConfig
from ifsel.errors import ValidationError
from ifsel.power import Technology


log = logging.getLogger(__name__)


class Attachment(enum.Enum):
    NONE = "none"
    UMTS = "UMTS"
    WLAN = "WLAN"

    @property
    def technology(self) -> Optional[Technology]:
        """Attached technology, or None before the first attach."""
        return None if self is Attachment.NONE else Technology(self.value)


@dataclasses.dataclass(frozen=True)
class CacState:
    """Current attachment plus the thresholds that drive transitions.

    Args:
        attached: Current attachment.
        distance_threshold: UMTS distance beyond which WLAN is tried [m].
        battery_threshold: Battery fraction above which WLAN is tried.
    """

    attached: Attachment
    distance_threshold: float
    battery_threshold: float

    def __post_init__(self) -> None:
        if not isinstance(self.attached, Attachment):
            object.__setattr__(self, "attached", Attachment(self.attached))
        if not (math.isfinite(self.distance_threshold) and self.distance_threshold > 0):
            raise ValidationError(
                f"distance threshold must be > 0 m, got {self.distance_threshold}"
            )
        if not 0.0 < self.battery_threshold < 1.0:
            raise ValidationError(
                f"battery threshold must be in (0, 1), got {self.battery_threshold}"
            )

    @classmethod
    def initial(cls, policy: PolicyConfig) -> "CacState":
        """Unattached state with the policy's thresholds."""
        return cls(
            attached=Attachment.NONE,
            distance_threshold=policy.distance_threshold,
            battery_threshold=policy.battery_threshold,
        )


def cac_step(state: CacState, ctx: DecisionContext, wlan_available: bool) -> CacState:
    """Applies one admission-control transition.

    From UMTS (or unattached) the node tries WLAN when it is available and
    either the distance to the base station exceeds the distance threshold or
    the battery level exceeds the battery threshold. Once on WLAN it stays
    until the battery drops below the threshold while the node is closer than
    the distance threshold, or until WLAN is lost. All comparisons are strict,
    so inputs exactly at a threshold keep the current attachment.

    Args:
        state: Current state.
        ctx: Decision context with the battery level and distance.
        wlan_available: Whether a WLAN access point can be reached.

    Returns:
        Next state.
    """
    level = ctx.battery.level
    distance = ctx.distance_to_bs

    if state.attached is Attachment.WLAN:
        leave = not wlan_available or (
            level < state.battery_threshold and distance < state.distance_threshold
        )
        attached = Attachment.UMTS if leave else Attachment.WLAN
    else:
        enter = wlan_available and (
            distance > state.distance_threshold or level > state.battery_threshold
        )
        attached = Attachment.WLAN if enter else Attachment.UMTS

    if attached is not state.attached:
        log.debug(
            "CAC %s -> %s at %.1f m, battery %.3f",
            state.attached.value,
            attached.value,
            distance,
            level,
        )
    return dataclasses.replace(state, attached=attached)
