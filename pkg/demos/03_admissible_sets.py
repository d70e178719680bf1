"""Admissible prime sets and the repair identity, on the level-11 form.

k = 1 admissibility just means pairwise distinct a(p).  The greedy pass
keeps the first prime attaining each coefficient value; every later prime
with a repeated value is "repaired": its coefficient is literally one of
the set's coefficients, which is the k = 1 case of the repair identity.
"""

from newform_basis import (
    FORM_11A,
    cardinality_report,
    dyadic_construction,
    expand_eta_product,
    greedy_maximal,
    prime_sets,
    repair,
)

table = expand_eta_product(FORM_11A, 1000)

candidates, has_large_coeff = prime_sets(table, 1000)
print(f"candidate primes in (2, 1000] coprime to 11: {len(candidates)}")

S = greedy_maximal(candidates, 1, table)
card = cardinality_report(S, 1000, 1)
print(f"greedy maximal set: {len(S)} primes, |S| / M^(1/2) = {card.ratio:.3f}")

excluded = [p for p in candidates if p not in set(S.primes)]
print(f"excluded primes: {len(excluded)}; repairing the first three:")
for p in excluded[:3]:
    w = repair(p, S, table)
    print(f"  a({p}) = a({w.plus[0]})  ({table.a(p)} = {table.a(w.plus[0])})")

# the two-interval construction picks one large-coefficient prime per scale
Q = dyadic_construction(table, 1, 4)
print(f"dyadic picks: {Q.primes} with |a| = {[abs(table.a(p)) for p in Q.primes]}")
print(f"both large-coefficient primes: {all(has_large_coeff(p) for p in Q.primes)}")
