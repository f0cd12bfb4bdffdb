"""Relay deployment cases compared by the study.

Each case fixes the forwarding scheme (amplify-forward repeater or
decode-forward relay), the stable-gain limit, the access-beam type, whether
the node radiates in every slot or only when its own UE is scheduled, and
whether the scheduler may co-serve a direct UE during relay slots.
"""

from __future__ import annotations

from dataclasses import dataclass

AF = "af"
DF = "df"

CASE_NAMES = (
    "noRepeaterRelay",
    "conventionalRepeater",
    "semiSmartRepeater",
    "smartRepeater",
    "hdRelayNoReuse",
    "hdRelayReuse",
    "fdRelayNoReuse",
    "fdRelayReuse",
)


@dataclass(frozen=True)
class RelayCaseParams:
    name: str
    uses_relays: bool = True
    forwarding: str = AF          # "af" | "df"
    half_duplex: bool = False     # df only; af repeaters forward transparently
    g_max_db: float = 50.0        # af amplification limit
    delta_nf_db: float = 1.0      # af noise-figure penalty
    ac_beam: str = "steered"      # "steered" | "broad"
    always_on: bool = False       # radiates every slot (no scheduling info)
    spatial_reuse: bool = False   # df only
    self_isolation_db: float = 130.0  # fd df only

    def __post_init__(self):
        if self.forwarding not in (AF, DF):
            raise ValueError(f"forwarding must be 'af' or 'df', got {self.forwarding}")
        if self.ac_beam not in ("steered", "broad"):
            raise ValueError(f"ac_beam must be 'steered' or 'broad', got {self.ac_beam}")
        if self.g_max_db <= 0:
            raise ValueError(f"g_max_db must be > 0, got {self.g_max_db}")
        if self.delta_nf_db < 0:
            raise ValueError(f"delta_nf_db must be >= 0, got {self.delta_nf_db}")


def default_cases(
    g_max_a_db: float = 50.0,
    g_max_b_db: float = 70.0,
    delta_nf_db: float = 1.0,
    self_isolation_db: float = 130.0,
) -> dict[str, RelayCaseParams]:
    """The eight comparison cases with their stock parameters."""
    cases = {
        "noRepeaterRelay": RelayCaseParams("noRepeaterRelay", uses_relays=False),
        "conventionalRepeater": RelayCaseParams(
            "conventionalRepeater", forwarding=AF, g_max_db=g_max_a_db,
            delta_nf_db=delta_nf_db, ac_beam="broad", always_on=True),
        "semiSmartRepeater": RelayCaseParams(
            "semiSmartRepeater", forwarding=AF, g_max_db=g_max_b_db,
            delta_nf_db=delta_nf_db, ac_beam="broad", always_on=True),
        "smartRepeater": RelayCaseParams(
            "smartRepeater", forwarding=AF, g_max_db=g_max_b_db,
            delta_nf_db=delta_nf_db, ac_beam="steered", always_on=False),
        "hdRelayNoReuse": RelayCaseParams(
            "hdRelayNoReuse", forwarding=DF, half_duplex=True),
        "hdRelayReuse": RelayCaseParams(
            "hdRelayReuse", forwarding=DF, half_duplex=True, spatial_reuse=True),
        "fdRelayNoReuse": RelayCaseParams(
            "fdRelayNoReuse", forwarding=DF, half_duplex=False,
            self_isolation_db=self_isolation_db),
        "fdRelayReuse": RelayCaseParams(
            "fdRelayReuse", forwarding=DF, half_duplex=False,
            spatial_reuse=True, self_isolation_db=self_isolation_db),
    }
    return cases
