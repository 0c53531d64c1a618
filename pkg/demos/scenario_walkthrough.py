"""
Scenario files end to end
=========================

A scenario declares operators and matrices, then lists checks.  The runner
evaluates each check in isolation, so a refused or failing directive does not
stop the others.  The same file can be run with ``sumspec analyze``.
"""
import json

from sumspec import emit, parse_scenario, run, serialize_scenario

text = """\
# a compact diagonal, a projection and a sum that is not closed
operator K = diag seq mod 1 { strand 0: 1*j^-1 }
operator P = diag seq mod 2 { strand 0: 1; strand 1: 0 }
operator Q = diag seq mod 2 { strand 0: 0; strand 1: 1 }
matrix M = [[2, 1], [1, 2]]
set seed = 3
check main P Q
check closedness K P
check closedness P Q
check ineq41 K P eps=1/2
check truncate K n=5
check coercivity M
"""

spec = parse_scenario(text)
assert serialize_scenario(spec) == text  # canonical text round-trips

report = run(spec)
for r in report.results:
    print(f"{r['index']}  {r['check']:<11} {r['status']:<9} {r['verdict']}")
print("exit code:", report.exit_code)

# the ineq41 directive is refused: H_eps for K and P is infinite at eps=1/2
print(json.dumps(json.loads(emit(report))["results"][3]["error"], indent=2))

# the CSV form is flat: one row per certificate field
print("\n".join(emit(report, "csv").splitlines()[:6]))
