"""Models for WDM photonic links between memory and NTT accelerator cores.

Submodules:

* :mod:`optolink.ntt` - modular arithmetic, NTT/INTT, polynomial products
* :mod:`optolink.link` - insertion loss and per-channel power
* :mod:`optolink.topology` - waveguide / wavelength layouts and validation
* :mod:`optolink.perf` - latency, bandwidth, power and area models
* :mod:`optolink.sim` - phase-level traffic simulation and sweeps
* :mod:`optolink.cli` - the ``optolink`` command
"""

from .link import OpticalPath, PhotonicParams, channel_electrical_power, path_insertion_loss, required_laser_power
from .ntt import (
    ButterflyCounter,
    ModulusContext,
    Polynomial,
    intt_fast,
    make_context,
    ntt_direct,
    ntt_fast,
    poly_mul_naive,
    poly_mul_ntt,
)
from .perf import (
    ElectricalBaseline,
    PerfReport,
    electrical_area,
    electrical_bitrate,
    electrical_power,
    equivalent_electrical_bitwidth,
    optolink_area,
    optolink_bandwidth,
    optolink_power,
    perf_report,
    propagation_latency,
    serialization_latency,
)
from .sim import SimConfig, SimResult, Workload, WorkloadOverride, raw_conflict_check, simulate, sweep
from .topology import (
    OpticalChannel,
    OptoLinkTopology,
    Waveguide,
    build_reference_topology,
    validate_topology,
    wavelength_demand,
)

__version__ = "0.1.0"
