"""relaysim: system-level simulator for 5G mmWave repeater/relay deployments.

Library layers, bottom up:

* relaymath      -- end-to-end rate / effective-SINR laws (pure functions)
* beamforming    -- array gains, EIRP, beamforming loss factors
* topology       -- Manhattan-grid scene generation and street routing
* propagation    -- pathloss, knife-edge diffraction, shadowing, noise
* channel        -- precomputed per-drop loss/angle matrices
* association    -- RX-power serving-node selection
* scheduler      -- slot-level round-robin simulation with interference
* config/experiment/metrics/cli -- scenario plumbing and the CLI
"""

from .relaymath import (
    AfParams,
    CapacityLaw,
    ResourceSplit,
    UNCAPPED,
    af_effective_sinr_dl,
    af_effective_sinr_ul,
    capacity,
    capacity_inverse,
    fddf_rate,
    finite_gain_power_loss,
    hddf_rate,
    multihop_af_sinr,
    multihop_fddf_rate,
    multihop_hddf_rate,
    noise_forwarding_loss,
)
from .beamforming import (
    AntennaSet,
    ArrayGeometry,
    BeamConfig,
    azimuth_gain_db,
    bf_loss_factor,
    elevation_gain_db,
    tx_power_dbm,
)
from .topology import GridScene, GridSpec, generate_grid, scene_from_json, scene_to_json, street_route
from .propagation import (
    LinkKind,
    NoiseParams,
    PathlossParams,
    diffraction_loss_db,
    knife_edge_loss_db,
    noise_floor_dbm,
    pathloss_db,
    shadow_sample_db,
)
from .channel import DropChannel
from .cases import CASE_NAMES, RelayCaseParams, default_cases
from .association import AssociationMap, associate, rx_power_dbm
from .scheduler import DropResult, DropSimulator, SlotOutcome, build_schedule, run_drop
from .config import ConfigError, ScenarioConfig, config_from_dict, default_config, load_config
from .experiment import run_experiment, run_one_drop
from .metrics import CdfSeries, MetricStore, emit_cdfs

__version__ = "0.1.0"
