"""
Essential spectra of sums of diagonal operators
===============================================

Two diagonal operators whose product is compact: the essential spectrum of
the sum is the union of the pieces, and zero sits in it exactly when some
strand has every limit equal to zero.
"""
from fractions import Fraction

from sumspec import (ModelOperator, StrandExpr, SymbolicSequence, build_singular_schedule,
                     check_sum_ranges_closed, check_theorem_a, check_zero_essential,
                     essential_spectrum, op_sum)

# A lives on odd indices, B on even ones; both carry a decaying correction
a = ModelOperator(SymbolicSequence.from_strands([
    StrandExpr.from_terms([(Fraction(1, 2), 0), (1, 1)]),
    StrandExpr.from_terms([(1, 2)]),
]), None, "A")
b = ModelOperator(SymbolicSequence.from_strands([
    StrandExpr.from_terms([(Fraction(-1, 3), 2)]),
    StrandExpr.from_terms([(2, 0)]),
]), None, "B")

for op in (a, b, op_sum([a, b])):
    print(op.label, [str(x) for x in sorted(essential_spectrum(op).essential_points)])

print(check_theorem_a([a, b]))

# every strand has a nonzero limit, so 0 stays out of the essential spectrum
v = check_zero_essential([a, b])
print("0 essential:", v.in_essential, "certificate eps:", v.eps)

# C = diag(1/k) is compact, so A + C leaves the even strand with limit 0
c = ModelOperator(SymbolicSequence.from_strands([StrandExpr.from_terms([(1, 1)])]), None, "C")
print("0 essential for A + C:", check_zero_essential([a, c]).in_essential)

# the range of A + B is closed; A + diag(1/k) is not
print(check_sum_ranges_closed([a, b]).closed, check_sum_ranges_closed([a, c]).closed)

# a singular schedule for A + C at zero, checked exactly
s = build_singular_schedule([a, c], 8)
print("schedule:", s.index_schedule, "verified:", s.verify())
