#pragma once

#include <qlab/series.hpp>

#include <cstdint>
#include <utility>
#include <vector>

namespace qlab::builders {

using series::LaurentSeries;

/// q^monomial_shift * prod_j E(q^step_j)^exponent_j.
struct EtaSpec {
    std::vector<std::pair<long, long>> factors;  // (step, exponent)
    long monomial_shift = 0;
};

/// E(q^j) = (q^j; q^j)_inf on [0, prec), expanded by the pentagonal number theorem.
LaurentSeries eta_series(long j, long prec);

/// Eta quotient described by `spec`, known on [monomial_shift, monomial_shift + prec).
LaurentSeries eta_product(const EtaSpec& spec, long prec);

/// (q^a; q^m)_inf, or (-q^a; q^m)_inf when negate_arg, on [0, prec).
LaurentSeries pochhammer_inf(long a, long m, bool negate_arg, long prec);

/// n-factor product prod_{k<n} (1 -/+ q^{a + m k}) on [0, prec).
LaurentSeries pochhammer_fin(long a, long m, bool negate_arg, long n, long prec);

/// gamma = E(q)^2 E(q^10).
LaurentSeries build_gamma(long prec);
/// delta = E(q^2) E(q^5)^2.
LaurentSeries build_delta(long prec);
/// xi = q E(q^2) E(q^10)^3 / (E(q)^3 E(q^5)); valuation 1, leading coefficient 1.
LaurentSeries build_xi(long prec);
/// Rogers-Ramanujan quotient (q;q^5)(q^4;q^5) / ((q^2;q^5)(q^3;q^5)).
LaurentSeries build_R(long prec);

/// E(q^2)^9 / E(q)^6 = sum_{n>=0} spt_w(2n+1) q^n on [0, prec).
///
/// Uses the sparse Jacobi expansion of E(q)^3, so the cost is O(prec^1.5)
/// coefficient operations rather than a dense product.
LaurentSeries spt_series(long prec);

/// Same series with coefficients reduced into [0, modulus); modulus < 2^62.
std::vector<std::uint64_t> spt_series_mod(long prec, std::uint64_t modulus);

/// spt_w(n) by enumerating partitions of n (n >= 1).
BigInt spt_oracle(long n);

/// The Andrews-Dixit-Schultz-Yee double sum, sum_{n>=1} spt_w(n) q^n on [0, prec).
LaurentSeries adsy_sum(long prec);

}  // namespace qlab::builders
