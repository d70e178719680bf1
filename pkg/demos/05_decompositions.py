"""Represent integers as sums of newform coefficients, two ways.

The constructive route runs the full pipeline on the level-11 form:
remainder splits, a two-prime solution over the non-admissible pool, the
repair-identity expansion of each prime, absorption of negative terms by
index multiplication with n_f = 2, and unit padding.  Every output is
re-verified by exact summation, including indices far beyond the dense
table (they factor through the stored primes).

The search route is independent: meet-in-the-middle over multisets of
actual table values, here for the weight-12 form.
"""

from newform_basis import (
    DELTA,
    FORM_11A,
    ConstructivePipeline,
    SearchDecomposer,
    cf_bound,
    expand_eta_product,
    verify_decomposition,
)

table = expand_eta_product(FORM_11A, 300_000)
pipeline = ConstructivePipeline(table)
print(f"summand bound C(f) for the level-11 form: {cf_bound(table).value}")
for Z in (1_000_000, -987_654, 123_456):
    d = pipeline.decompose(Z)
    rep = verify_decomposition(d, table)
    print(f"  Z={Z}: ell={d.ell} terms={d.terms} verified={rep.ok}")
print()

delta = expand_eta_product(DELTA, 1000)
searcher = SearchDecomposer(delta)
print("search route on the weight-12 form:")
for Z in (0, 1, 229, -100):
    d = searcher.decompose(Z)
    rep = verify_decomposition(d, delta)
    print(f"  Z={Z}: ell={d.ell} terms={d.terms} verified={rep.delta == 0}")
