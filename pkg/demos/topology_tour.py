"""
The reference waveguide layout
==============================

Builds the five-waveguide layout, shows the wavelength plan, then breaks
it on purpose to show what validation reports.
"""

import dataclasses
import warnings

from optolink.topology import build_reference_topology, validate_topology, wavelength_demand

topo = build_reference_topology(num_cores=4, bitwidth=128)
for wg in topo.waveguides:
    ids = sorted(ch.wavelength_id for ch in wg.channels)
    roles = {ch.role for ch in wg.channels}
    print(f"waveguide {wg.id} ({', '.join(sorted(roles))}): wavelengths {ids[0]}..{ids[-1]}")

demand = wavelength_demand(topo)
print(f"{demand.distinct_wavelengths} distinct wavelengths, at most {demand.max_per_waveguide} per waveguide")
print("valid:", validate_topology(topo).ok)

# drop every twiddle channel of core 1
broken = dataclasses.replace(
    topo,
    waveguides=tuple(
        dataclasses.replace(wg, channels=tuple(c for c in wg.channels if not (c.role == "twiddle" and c.sink == "core1")))
        for wg in topo.waveguides
    ),
)
print("after removing core 1's twiddles:", validate_topology(broken).violations)

# 33 cores put 66 wavelengths on each data waveguide
with warnings.catch_warnings(record=True) as caught:
    warnings.simplefilter("always")
    wavelength_demand(build_reference_topology(33))
print("33 cores:", caught[0].message if caught else "no warning")

print(topo.to_json()[:200], "...")
