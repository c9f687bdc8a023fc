"""
Which sensors can run on harvested power?
=========================================

Judge the requirement registry, then sweep a demand level to find where
each compartment stops coping.
"""

import dataclasses

from ivwsn import pipeline
from ivwsn.config import Config
from ivwsn.feasibility import DutyCycleModel, average_power, report_table

cfg = Config()
rows = pipeline.sweep(cfg)
runs = pipeline.harvest_all(cfg, duration_s=600.0)

# registry demands are about 100 mW each, so nothing passes as listed
reports = pipeline.feasibility_report(cfg, sinr_rows=rows, runs=runs)
print(report_table(reports))

# a 20 mW radio awake 10 % of the time averages about 2 mW
duty = DutyCycleModel(active_power_mw=20.0, sleep_power_mw=0.01, duty=0.1)
demand = average_power(duty)
print(f"\nduty-cycled demand {demand:.3f} mW")
nodes = [dataclasses.replace(n, power_mw=demand) for n in cfg.requirements]
for r in pipeline.feasibility_report(cfg, nodes, rows, runs):
    print(f"  {r.node.label:<20} {r.compartment.value:<10} overall {r.overall}")
