"""
Worst-case SINR across the cabin
================================

Sweep the default synthetic link set through the three radios and see
which one survives the worst link in each compartment.
"""

import numpy as np

from ivwsn import pipeline
from ivwsn.config import Config
from ivwsn.model import COMPARTMENTS, TECHNOLOGIES

cfg = Config()

# every link is evaluated for every band, against a co-band interferer
rows = pipeline.sweep(cfg)
print(f"{len(rows)} (link, band) pairs")

# median and worst SINR per compartment and band
for comp in COMPARTMENTS:
    print(f"\n{comp.value}")
    for tech in TECHNOLOGIES:
        s = np.array([r.sinr_db for r in rows if r.link.compartment is comp and r.tech is tech])
        print(f"  {tech.value:<7} median {np.median(s):7.1f} dB   worst {s.min():7.1f} dB")

# UWB owes its margin to narrowband suppression; switch it off and compare
off = pipeline.sweep(cfg, suppression=False)
uwb_on = min(r.sinr_db for r in rows if r.tech.value == "UWB")
uwb_off = min(r.sinr_db for r in off if r.tech.value == "UWB")
print(f"\nUWB worst case with suppression {uwb_on:.1f} dB, without {uwb_off:.1f} dB")
