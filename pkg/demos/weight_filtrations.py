"""
Monodromy weight filtrations
============================

The weight filtration of the quintic monodromy logarithm, and the relative
filtration of the extended logarithm on the double cover.
"""

from hodgemirror import (NilpotentOperator, check_filtration_properties,
                         extended_candidate_filtration, extended_filtration_check,
                         extended_monodromy, monodromy_matrices, weight_filtration)

N = NilpotentOperator(monodromy_matrices(5, 50).N, center=3)
W = weight_filtration(N)
print("graded dimensions Gr_0..Gr_6:", W.graded_dims(0, 6))
print("N(W_k) in W_(k-2), N^k: Gr_(3+k) = Gr_(3-k):", check_filtration_properties(N, W).ok)

ext = extended_monodromy(N.matrix, 2, [(1, 0), (1, -1)])
W_hat = extended_candidate_filtration(ext)
report = extended_filtration_check(ext, W_hat)
print("extended graded dimensions:", W_hat.graded_dims(0, 6))
print("extended check:", report.ok, " torsion index:", report.info["torsion_index"])
