"""
From network output to a stability grade
========================================

A trained network maps five standardized indexes to a 0-100 evaluation;
RS = 100/output - 1 turns that into the stability index, with cut points
at 0.25 (fragile below) and 1 (stable above).
"""

import numpy as np

import regionstab as rs

# The cut points line up with the 80 and 50 marks of the 0-100 label
# scale, which is why they come out exact.
for out in (90.0, 80.0, 65.0, 50.0, 30.0):
    score = rs.rs_transform(out)
    print(f"network output {out:>5.1f} -> RS {score.value:>6.3f} ({score.category.value})")

# Train on the bundled country-years with synthetic fragility labels
# (the real 0-120 label column is not redistributable), then score the
# same records through the pipeline command.
records = rs.load_country_series()
labeled = [rs.CountryYearRecord(
    country=r.country, year=r.year, lap_mm=r.lap_mm, aat_c=r.aat_c, fo=r.fo,
    ams_pct=r.ams_pct, psr_pct=r.psr_pct, rs=r.rs,
    fsi_label=(1.0 - r.rs) * 55.0) for r in records]

config = rs.make_config(max_epochs=500, rng_seed=11)
net, report, model_path = rs.cmd_train(labeled, config, "out_scoring")
print(f"\ntrained in {report.epochs_run} epochs, "
      f"final loss {report.loss_history[-1]:.2e}")

scored = rs.cmd_score(labeled, config, model_path, "out_scoring")
print("\ncountry      year   bpnn     RS  class")
for rec, score in scored[:8]:
    print(f"{rec.country:<12} {rec.year}  {score.bpnn_output:5.1f}  "
          f"{score.value:5.2f}  {score.category.value}")
print("... full table in out_scoring/scores.csv")
