"""
Building a labeled dataset and testing the object-count effect
==============================================================

The study protocol: sample layouts with 3, 4, or 5 objects, walk random
paths in each, record per-path reset counts and their mean, then test
whether the number of objects shifts the reset distribution (it does).

This demo runs a miniature version; scale the counts/paths up (or use the
CLI's build-dataset with --workers) for study-sized runs.
"""

from roomroam import SimConfig, analyze, build_dataset, split, write_dataset

cfg = SimConfig(episode_distance=100.0)  # shortened episodes for the demo

samples = build_dataset({3: 6, 4: 6, 5: 6}, cfg, paths=4, seed=2024)
print(f"built {len(samples)} samples")
for s in samples[:3]:
    print(f"  {s.id}: per-path {s.per_path_resets} mean {s.mean_resets:.2f}")

# Deterministic 6:2:2 split, keyed only by sample ids and the seed.
samples = split(samples, ratios=(0.6, 0.2, 0.2), seed=1)
counts = {k: sum(s.split == k for s in samples) for k in ("train", "val", "test")}
print("split sizes:", counts)

# JSONL persistence: versioned header line, then one sample per line.
write_dataset(samples, "mini_dataset.jsonl")
print("wrote mini_dataset.jsonl")

# Rank and variance tests across the 3/4/5-object groups.  At this toy
# scale significance is not guaranteed; the acceptance suite runs the
# 30-layouts-per-group version where p < .05 is required.
report = analyze(samples)
print("group sizes:", report.group_sizes)
print("group means:", [round(m, 1) for m in report.group_means])
print(f"Kruskal-Wallis H={report.kw_h:.2f} p={report.kw_p:.3f} eta2={report.kw_eta2:.2f}")
print(f"Levene W={report.levene_stat:.2f} p={report.levene_p:.3f}")
