"""
Bitrate, power and area tables
==============================

Regenerates the comparison tables and lists every check against the
published values.
"""

from optolink import report

rows, checks3 = report.table3()
print("bitrate")
for row in rows:
    print("  ", row)

rows, checks4 = report.table4()
print("power")
for row in rows:
    print(f"   {row['bitwidth']:>3} bit x {row['cores']:>2} cores: electrical {row['electrical_uW']:>8} uW,"
          f" optolink {row['optolink_W']:.3f} W (published {row['published_optolink_W']}, {row['rel_error']:+.3%})")

rows, checks_area = report.area_table()
print("area")
for row in rows:
    print(f"   {row['cores']:>2} cores: electrical {row['electrical_um2']} um^2, optolink {row['optolink_total_mm2']} mm^2")

checks = checks3 + checks4 + checks_area
failed = [c for c in checks if not c.passed]
print(f"{len(checks) - len(failed)}/{len(checks)} checks reproduced")
for c in failed:
    print("  mismatch:", c.row())

# which accelerators a 128-channel link can feed
for row in report.compare(128):
    print(f"   {row['name']:<11} {row['required_GBps']:>7g} GB/s {'ok' if row['meets'] else 'short'}")
