"""
Route benchmark: same products, four pipelines, one report
==========================================================

Timings are environment noise; the point of the harness is that every
route must produce identical multivectors before any number is printed.
Ratios are relative to the direct route.
"""

from cliffalg.bench import named_workload, render_text, run_workload

# 40 seeded products of 6-term multivectors in Cl(3,3)
workload = named_workload("cl33-mixed", seed=0)
reports = run_workload(workload)
print(render_text(workload, reports))

# the high-dimensional golden instance: one fixed Cl(8,2) product
# through the direct kernel and through 2x2 matrices over Cl(7,1)
workload = named_workload("golden-g82")
reports = run_workload(workload)
print()
print(render_text(workload, reports))

# the same harness is wired to the CLI:
#   python3 -m cliffalg bench cl33-mixed
#   python3 -m cliffalg bench --format records
