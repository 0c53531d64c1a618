"""
Sums of projections and the Gram embedding
==========================================

For projections P_1..P_n the map x -> (P_1 x, ..., P_n x) has Gram operator
sum P_i, and the block matrix of cross products P_i P_j shares its nonzero
spectrum.  When the ranges are almost orthogonal the block matrix is the
identity plus something of small rank.
"""
import numpy as np

from sumspec import coercivity_constant, corollary_ranges_eq, gram_gap
from sumspec.generate import matrix_family, projection_family

rng = np.random.default_rng(4)

# three or four projections in C^120 with a couple of tilted frame vectors
projs, bound = projection_family(rng, dim=120)
g = gram_gap(projs)
print(f"{len(projs)} projections, ranks {[round(np.trace(p.array).real) for p in projs]}")
print(f"spectral gap above zero: {g.eps:.4f}")
print(f"nonzero spectra agree to {g.spectra_mismatch:.1e}")
print(f"Gram eigenvalues away from 1: {g.gram_outliers} (at most {bound})")

# the smallest nonzero eigenvalues are the ones moved by the tilted frames
print("lowest eigenvalues of the sum:", np.round(g.sum_spectrum[:4], 4))

# rectangular B_i whose columns span C^40: the ranges add up to everything
mats = matrix_family(rng, n=40)
c = coercivity_constant(mats, samples=200, seed=1)
print(f"\ncoercivity constant {c.constant:.4f}, worst sampled slack {c.worst_slack:.2e}")
r = corollary_ranges_eq(mats)
print("range of the stack equals range of the Gram sum:", r.equal, (r.rank_stacked, r.rank_gram))

# keep five columns of each so they no longer span: the constant collapses
thin = [m[:, :5] for m in mats]
print(f"with five columns each: {coercivity_constant(thin, samples=50).constant:.2e}")
