"""Where does the first negative coefficient sit, and how often are
coefficients large?

For both builtin forms the first sign change is already at n = 2.  The
density of primes with a(p)^2 > p^(2k-1) settles near 0.39, the value the
equidistribution heuristic predicts, and the empirical estimate is stable
under halving the range.
"""

from newform_basis import DELTA, FORM_11A, expand_eta_product, first_negative, large_coeff_density

for descriptor, name in ((DELTA, "delta"), (FORM_11A, "11a")):
    table = expand_eta_product(descriptor, 10**5)
    sign = first_negative(table)
    print(f"{name}: n_f = {sign.n_f}, size bound {sign.bound_value:.3f}, "
          f"ratio {sign.ratio:.3f}")
    for T in (10**3, 10**4, 5 * 10**4, 10**5):
        d = large_coeff_density(table, T)
        print(f"  T = {T:>6}: alpha_hat = {d.count_large}/{d.count_all}"
              f" = {float(d.alpha_hat):.4f}")
    print()

print("reference density from the semicircle law: 0.3910")
