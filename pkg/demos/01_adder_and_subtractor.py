# %% [markdown]
# # Ripple-carry addition and subtraction with Toffoli networks
#
# The adder writes the sum over the B register and leaves the carry chain
# c_1..c_n on its own lines. The subtractor wraps the same network in two
# CNOT arrays driven by a single C_SUB line.

# %%
from revalu import build_adder, build_subtractor, cost_report, emit_text, run
from revalu.arith import oracle_add, oracle_sub, verify_adder, verify_subtractor

adder = build_adder(3)
print(emit_text(adder))


def load(c, **regs):
    v = 0
    for role, val in regs.items():
        v = c.register(role).write(v, val)
    return v


# %% 3 + 5 on three bits wraps to 0 with a carry out
out = run(adder, load(adder, A=3, B=5)).value
print("S =", adder.register("B").read(out), " carries c0..c3 =",
      format(adder.register("CARRY").read(out), "04b")[::-1])
print("oracle:", oracle_add(3, 3, 5))

# %% With C_SUB = 1 the same lines compute 5 - 3
sub = build_subtractor(3)
out = run(sub, load(sub, **{"CTRL:C_SUB": 1, "A": 5, "B": 3})).value
print("S =", sub.register("B").read(out), " A leaves as", sub.register("A").read(out))
print("oracle:", oracle_sub(3, 5, 3))

# %% Exhaustive differential checks
for n in range(1, 5):
    print(n, verify_adder(build_adder(n)), verify_subtractor(build_subtractor(n)))

# %%
print(cost_report(adder).to_text())
