"""
Holistic degrees of freedom as a resource
=========================================

Although the holistic part is invisible to product measurements, joint
measurements can read it.  This script runs dense coding in the bilocal
classical theory, then data hiding, LOCC decoding and secret sharing with
the omega+/omega- pair.
"""

# %%
# Dense coding
# ------------
# Alice flips her bit and the hidden sign; one transmitted bit carries two.
from gpt_tomo import resolve_theory
from gpt_tomo.protocols import (
    data_hiding_audit,
    dense_code_bct,
    local_encode_rebit,
    locc_decode,
    rebit_swap_resource,
    secret_sharing_conditions,
)

for message in ((0, 0), (0, 1), (1, 0), (1, 1)):
    t = dense_code_bct(message)
    print(
        message,
        "decoded", t.tables["decoded"],
        "p =", t.tables["success_probability"],
        "product-only sign guess =", t.tables["product_only_y_success"],
    )

# %%
# Data hiding
# -----------
comp = resolve_theory("two-rebit")
w0, w1 = local_encode_rebit(0), local_encode_rebit(1)
audit = data_hiding_audit(w0, w1, comp)
print(audit.verdict, "local gap", audit.worst_local_gap, "via", audit.measurement)

# %%
# LOCC decoding with a shared omega+
# ----------------------------------
# Both parties measure YY parity on their halves; the XOR is the hidden bit.
for x in (0, 1):
    t = locc_decode(x, seed=2024, runs=1000)
    print(f"x={x}", t.tables["joint_probabilities"], "correct runs", t.tables["runs_correct"])

# %%
# Secret sharing
# --------------
report = secret_sharing_conditions(comp, w0, w1, comp.measurements["yy-parity"], rebit_swap_resource())
print("conditions", report.conditions, "decodable", report.protocol["decodable"])
