"""Published reference values used to seed defaults and regression checks.

Every constant quoted from the source publication lives here, next to a note
saying where it came from.  Calibration constants that are back-derived
rather than published are marked as such.
"""

# -- Photonic component parameters (component parameter table) --------------
LASER_SOURCE_LOSS_DB = 5.0
COUPLER_LOSS_DB = 1.0
SPLITTER_LOSS_DB = 0.2
WAVEGUIDE_LOSS_DB_PER_CM = 1.0
RING_DROP_LOSS_DB = 0.7
RING_THROUGH_LOSS_DB = 0.01
PHOTODETECTOR_LOSS_DB = 0.5
RING_HEATING_MW = 0.32

# Per optical channel transmitter / receiver power (power analysis text).
TX_POWER_PER_CHANNEL_MW = 1.22
RX_POWER_PER_CHANNEL_MW = 0.92

# Back-derived, not published: 6.59 W / 512 channels - (1.22 + 0.92) mW.
LASER_WALL_POWER_PER_CHANNEL_MW = 10.73

# Not published; overridable default receiver sensitivity.
RX_SENSITIVITY_DBM = -20.0

# -- Timing (timing analysis) ------------------------------------------------
PER_WAVELENGTH_RATE_GBPS = 10.0  # PRBS line rate, Gb/s
PER_CHANNEL_RATE_GBYTES = 12.5  # "100Gb/s or 12.5GB/s" per channel
PROPAGATION_PS_PER_MM = 10.0  # 10 ps over a 1000 um waveguide
REFERENCE_WAVEGUIDE_UM = 1000.0
PRBS_SEQUENCE_BITS = 64
PRBS_SEQUENCE_NS = 6.4
ELECTRICAL_LATENCY_NS = 3.04
MAX_WAVELENGTHS_PER_WAVEGUIDE = 64

# Bitwidth -> (electrical bitrate GB/s, OptoLink bandwidth TB/s), bitrate table.
BITRATE_TABLE = {
    32: (1.32, 0.4),
    64: (2.63, 0.8),
    128: (5.26, 1.6),
}
ELECTRICAL_1024BIT_GBYTES = 42.1
EQUIVALENT_ELECTRICAL_BITWIDTH_1P6TB = 4864
SCALED_BANDWIDTHS_TBPS = {192: 2.4, 1024: 12.8}

# -- Power (power consumption table) -----------------------------------------
# (bitwidth, cores) -> (electrical uW, OptoLink W)
POWER_TABLE = {
    (32, 4): (283.89, 1.65),
    (32, 8): (562.44, 3.29),
    (32, 16): (1121.9, 6.58),
    (64, 4): (308.18, 3.29),
    (64, 8): (619.29, 6.58),
    (64, 16): (1232.19, 13.16),
    (128, 4): (336.99, 6.59),
    (128, 8): (661.74, 13.16),
    (128, 16): (1332.31, 26.31),
}

# -- Area (area analysis) -----------------------------------------------------
# 128-bit electrical network area per NTT core count, um^2
ELECTRICAL_AREA_UM2 = {4: 3097.3, 8: 5741.2, 16: 11861.9}
TRANSCEIVER_AREA_MM2_PER_WAVELENGTH = 0.0096  # each of TX and RX
MRR_AREA_MM2 = 0.01  # per ring, 5 um radius
MRRS_PER_CHANNEL = 2  # modulator ring + filter ring

# -- Bottleneck motivation (memory bottleneck discussion) -------------------
BOTTLENECK_MULTIPLIERS = 40_960
BOTTLENECK_CLOCK_HZ = 2e9
BOTTLENECK_HBM_BYTES_PER_S = 3e12
BOTTLENECK_COMPUTE_S = 0.18e-3
BOTTLENECK_TRANSFER_S = 2.1e-3

# -- Accelerator memory bandwidth survey -------------------------------------
# name, hardware target, schemes, required bandwidths in GB/s
ACCELERATORS = (
    ("100x", "GPU", ("BFV", "CKKS"), (900.0,)),
    ("cryptGPU", "GPU", ("MPC",), (1.25,)),
    ("TensorFHE", "GPU", ("BFV", "CKKS"), (2400.0,)),
    ("HEAX", "FPGA", ("CKKS",), (34.0, 64.0)),
    ("Poseidon", "FPGA", ("BFV", "CKKS"), (460.0,)),
    ("FAB", "FPGA", ("BFV", "CKKS"), (460.0,)),
    ("F1", "ASIC", ("BFV", "CKKS"), (1000.0,)),
    ("CraterLake", "ASIC", ("BFV", "CKKS"), (2400.0,)),
    ("BTS", "ASIC", ("BFV", "CKKS"), (1000.0,)),
    ("ARK", "ASIC", ("BFV", "CKKS"), (1000.0,)),
)
