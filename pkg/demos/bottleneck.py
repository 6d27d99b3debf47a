"""
Memory bandwidth versus compute
===============================

A batch whose multiplies take 0.18 ms on 40,960 multipliers at 2 GHz but
whose 6.3 GB of traffic needs 2.1 ms through a 3 TB/s memory port, followed
by an NTT batch over the optical link and the same batch over an electrical
bus of equal width.
"""

from optolink.sim import Workload, WorkloadOverride, simulate
from optolink.topology import build_reference_topology

topo = build_reference_topology(4, 128)

rate = 40960 * 2e9  # modular multiplies per second
memory_bound = Workload(
    override=WorkloadOverride(bytes_in=4.2e9, bytes_out=2.1e9, compute_ops=0.18e-3 * rate, ops_rate=rate)
)
r = simulate(topo, memory_bound, overlap=False, memory_bandwidth=3e12)
print(f"compute {r.compute_time * 1e3:.3f} ms, transfer {r.transfer_time * 1e3:.3f} ms -> {r.bottleneck} bound")

# sixteen 4096-point NTTs, pipelined across load, compute and store
batch = Workload(n=4096, coefficient_bitwidth=64, num_transforms=16, clock_hz=300e6)
for link in ("optical", "electrical"):
    r = simulate(topo, batch, link=link)
    print(
        f"{link:>10}: load {r.load_time * 1e9:9.2f} ns, compute {r.compute_time * 1e6:6.2f} us,"
        f" total {r.total_time * 1e6:9.2f} us, {r.bottleneck} bound"
    )

# shallow buffers force read-after-write stalls on small transforms
for depth in (1, 2, 4, 8):
    r = simulate(topo, Workload(n=8, buffering_depth=depth))
    print(f"n=8 buffering depth {depth}: {r.stall_count} stall cycles")
