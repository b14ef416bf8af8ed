"""
Picking indexes by contribution rate
====================================

Correlation-matrix PCA assigns each component a contribution rate
Cr = lambda_i / sum(lambda), and the first k components that accumulate
95% of the variance decide which indexes are worth keeping.
"""

import numpy as np

import regionstab as rs

# The published seven-index spectrum. Feeding eigenvalues directly skips
# the data stage: contribution rates only depend on the spectrum.
spectrum = (3.7366, 1.8172, 1.2306, 1.1533, 0.7351, 0.3561, 0.0533)
cr, acc = rs.contribution_rates(spectrum)
k = rs.select_components(acc, 0.95)

print("component  eigenvalue        Cr  accumulated")
for i, lam in enumerate(spectrum):
    print(f"{i + 1:>9}  {lam:>10.4f}  {100 * cr[i]:>7.2f}%  {100 * acc[i]:>10.2f}%")
print(f"\ncomponents needed for 95% of the variance: {k}")

# The same machinery end to end on the bundled country series: build the
# data matrix, standardize, correlate, eigensolve, select.
records = rs.load_country_series()
X = rs.records_to_matrix(records, rs.TRAINING_INDEXES)
result, reduced = rs.run_pca(X, threshold=0.95)

print(f"\nbundled data ({X.n_rows} country-years, {X.n_cols} indexes):")
print("  eigenvalues:", np.round(result.eigenvalues, 4))
print("  ranked indexes:", ", ".join(result.ranked_indexes))
print(f"  selected at 0.95: {', '.join(result.selected_indexes)} (k = {result.selected_k})")

# Index-selection mode keeps the raw columns of the winners, so the
# reduced matrix is still in physical units.
print("  reduced matrix columns:", reduced.column_names)
print("  reduced matrix units:  ", reduced.column_units)
