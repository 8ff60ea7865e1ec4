"""Run the oracle suites and print their structured reports.

Run:  python demos/verification_tour.py [suite]
with suite one of normalization, reproducing, crosscheck, bounds,
asymptotics, all (default: all).
"""
import sys

from szegofock import QuadConfig, run_suite

suite = sys.argv[1] if len(sys.argv) > 1 else "all"
report = run_suite(suite, QuadConfig())

for line in report.lines():
    print(line)
print()
for note in report.notes:
    print("#", note)
print()
n_pass = sum(c.passed for c in report.cases)
print(f"{report.suite}: {n_pass}/{len(report.cases)} cases passed")
sys.exit(0 if report.all_passed else 1)
