# Compare the deletion strategies on one random instance.
#
# A stripped-down version of what `deltri-bench` reports.  Uses a few
# thousand points so it finishes in seconds.

# %% Run each method over the same deletion order
from deltri import InstanceKind, InstanceSpec
from deltri.bench import format_table, run, worst_case_table

spec = InstanceSpec(InstanceKind.RANDOM_SQUARE, n=2000, seed=7)
reports = [run(spec, method=m) for m in ("ear3", "ear5", "flip", "edge", "mixed")]

# %% Summary table plus the worst-case budgets for k = 4..12
print(format_table(reports, worst_case_table(4, 12)))

# %% Mean degree of deleted vertices sits close to 6
for r in reports:
    print(f"{r.method:6s} mean degree {r.mean_degree:.3f}")

# %% Per-degree cost for the ear queue
ear3 = reports[0]
for k in sorted(ear3.per_degree_counts):
    powers, tests = ear3.per_degree_counts[k]
    print(f"k={k:2d}  powers {powers:6.2f}  incircle {tests:6.2f}")
