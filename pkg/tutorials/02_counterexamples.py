"""Where the braid-index inequality fails, and which hypothesis is to blame.

Each counterexample violates |sl(a) - sl(b)| <= 2(max n - b_C) by exactly 2.
The report lists the hypotheses and marks the one that breaks.
"""
from obf.fixtures import counterexample_family, family_page, fixture
from obf.normalize import format_report, verdict_line

for name in ("ex6_2", "ex6_1", "ex6_4"):
    fx = fixture(name)
    print(f"== {name}: {fx.description}")
    print(verdict_line(fx.report), "| failed:", fx.report.failed_hypotheses())
    for flag in fx.flags:
        print("   flag:", flag)

print()
print("The two-component family: the margin never moves.")
page = family_page()
for n in range(2, 9):
    row = []
    for eps in (1, -1):
        m = counterexample_family(page, "T(C0)^2", n, eps)
        row.append(f"eps={eps:+d}: sl={m.alpha.sl:>3} {verdict_line(m.report)}")
    print(f"n={n}  " + "   ".join(row))

print()
print(format_report(fixture("ex6_2").report))
