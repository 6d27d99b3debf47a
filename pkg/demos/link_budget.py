"""
Optical link budget
===================

Insertion loss along one path, the laser power it implies, and the
electrical power drawn per channel.
"""

from optolink.link import (
    OpticalPath,
    PhotonicParams,
    channel_electrical_power,
    path_insertion_loss,
    required_laser_power,
)
from optolink.topology import build_reference_topology, worst_case_path

params = PhotonicParams()

# one coupler, 0.5 cm of waveguide, 15 rings passed, then drop and detect
path = OpticalPath(
    couplers_crossed=1,
    waveguide_length=0.5,
    through_rings_passed=15,
    has_drop_ring=True,
    has_photodetector=True,
)
loss = path_insertion_loss(path, params)
dbm, mw = required_laser_power(path, params)
print(f"insertion loss {loss:.2f} dB -> laser {dbm:.2f} dBm = {mw:.4f} mW at {params.rx_sensitivity} dBm sensitivity")

# the same numbers for the worst channel of each reference waveguide
topo = build_reference_topology(4, 128)
for wg in topo.waveguides:
    p = worst_case_path(topo, wg.id)
    print(f"waveguide {wg.id}: {p.through_rings_passed:2d} rings passed, {path_insertion_loss(p):.2f} dB")

# electrical power per channel, in mW
for name, value in channel_electrical_power(params).items():
    print(f"{name:>6}: {value:.2f} mW")
