"""The exact-arithmetic ledger: every case inequality, re-verified.

No floating point is used on this path; the margins below are exact
rational/surd intervals.  Two cases are deliberately two-sided: the
digit-sum lemma's reduced step fails at k = 4 (the full sum still
holds), and the letter-3 chain is certified with both the printed and
the derivation-consistent distortion constant.
"""

from nicfdim import render_table, run_all, run_case

results = run_all()
print(render_table(results))
print()

res = run_case("case_esti")
rows = {r.params["k"]: r.verdict for r in res.sweep}
print("== sharpness of the size->6 condition ==")
for k in (4, 5, 6, 7):
    print(f"  k={k}: {rows[k]}")
print()

res = run_case("case_pm5")
row5 = [r for r in res.sweep if r.params["k"] == 5][0]
print("== the size-5 case is genuinely tight ==")
print(f"  certified margin at k=5: [{float(row5.margin.lo):.3e},"
      f" {float(row5.margin.hi):.3e}]")
print()

res = run_case("lemma_2_6")
full = {r.params["k"]: r.verdict for r in res.sweep if r.variant == "full"}
red = {r.params["k"]: r.verdict for r in res.sweep if r.variant == "reduced"}
print("== digit-sum lemma audit at the boundary ==")
for k in (4, 5):
    print(f"  k={k}: full sum {full[k]}, reduced sufficient condition {red[k]}")
