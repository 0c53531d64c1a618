"""
What finite sections see
========================

Truncations of diag(1 + 1/j, -1) cluster at the essential points 1 and -1,
and a random finite-rank perturbation moves only a handful of eigenvalues
outside the unperturbed hull.
"""
from sumspec import ModelOperator, StrandExpr, SymbolicSequence, truncation_spectrum_convergence, weyl_experiment
from sumspec.truncation import truncated_spectrum

op = ModelOperator(SymbolicSequence.from_strands([
    StrandExpr.from_terms([(1, 0), (1, 1)]),
    StrandExpr.from_terms([(-1, 0)]),
]), None, "D")

# at n=50 the values 1 + 1/j are still further apart than the cluster gap,
# so only -1 registers as a growing cluster there
r = truncation_spectrum_convergence(op, (50, 100, 200, 400))
for n, cl, h in zip(r.sizes, r.clusters, r.hausdorff_to_essential):
    print(f"n={n:4d}  clusters={len(cl):3d}  distance to {{1, -1}}: {h:.4f}")

# diagonal rational truncations stay exact
print([str(x) for x in truncated_spectrum(ModelOperator(
    SymbolicSequence.from_strands([StrandExpr.from_terms([(1, 1)])]), None, "K"), 6)])

for rank in (1, 3, 8):
    w = weyl_experiment(op, rank, 200, seed=rank)
    print(f"rank {rank}: interlacing violations {w.interlacing_violations}, outliers {w.outliers}, "
          f"largest shift {w.max_shift:.3f}, essential spectrum unchanged: {w.essential_unchanged}")
