# %% [markdown]
# # Five control lines, one reversible ALU
#
# Control bits are given in the order C_carryxor C_snot C_aANDb C_bnot C_SUB.
# `discover_map` sweeps all 32 settings and names what each one computes on
# the B register (S) and on the carry lines.

# %%
from revalu import ControlVector, build_alu, conformance_report, discover_map
from revalu.alu import simulate_alu

alu = build_alu(3)
print(alu.line_count, "lines,", len(alu), "gates")

# %% A few operations at width 3
for bits, a, b in [("10000", 3, 5), ("11101", 5, 3), ("11110", 2, 7), ("00000", 6, 3)]:
    x, s, carries = simulate_alu(ControlVector.parse(bits), 3, a, b)
    print(f"{bits}  A={a} B={b}  ->  S={s} carries={carries}")

# %% What every control vector does
for k, behavior in discover_map(3).items():
    print(behavior.line(k))

# %% Row-by-row check of the decode table
report = conformance_report(3)
for row in report.rows:
    print(row.line())
print("verdicts as expected:", report.matches_expected())
