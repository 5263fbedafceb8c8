#include <qlab/builders.hpp>

#include <stdexcept>
#include <string>

namespace qlab::builders {

namespace {

using Dense = std::vector<BigInt>;

Dense unit_dense(long n) {
    Dense a(static_cast<size_t>(std::max(0L, n)));
    if (n > 0) a[0] = 1;
    return a;
}

// a *= (1 + sign q^e)
void mul_binomial(Dense& a, long e, int sign) {
    const long n = static_cast<long>(a.size());
    for (long k = n - 1; k >= e; --k) {
        if (sign > 0)
            a[k] += a[k - e];
        else
            a[k] -= a[k - e];
    }
}

// a /= (1 + sign q^e)
void div_binomial(Dense& a, long e, int sign) {
    const long n = static_cast<long>(a.size());
    for (long k = e; k < n; ++k) {
        if (sign > 0)
            a[k] -= a[k - e];
        else
            a[k] += a[k - e];
    }
}

// Nonzero terms of E(q^step)^3 = sum_k (-1)^k (2k+1) q^{step k(k+1)/2} below prec.
struct SparseTerm {
    long exponent;
    long coeff;
};

std::vector<SparseTerm> jacobi_cube(long step, long prec) {
    std::vector<SparseTerm> t;
    for (long k = 0;; ++k) {
        const long e = step * k * (k + 1) / 2;
        if (e >= prec) break;
        t.push_back({e, (k % 2 == 0 ? 1 : -1) * (2 * k + 1)});
    }
    return t;
}

void mul_sparse(Dense& a, const std::vector<SparseTerm>& t) {
    const long n = static_cast<long>(a.size());
    for (long k = n - 1; k >= 0; --k) {
        for (size_t s = 1; s < t.size() && t[s].exponent <= k; ++s) {
            const long c = t[s].coeff;
            if (c > 0)
                mpz_addmul_ui(a[k].get_mpz_t(), a[k - t[s].exponent].get_mpz_t(), static_cast<unsigned long>(c));
            else
                mpz_submul_ui(a[k].get_mpz_t(), a[k - t[s].exponent].get_mpz_t(), static_cast<unsigned long>(-c));
        }
    }
}

// Divides by a sparse series with constant term 1.
void div_sparse(Dense& a, const std::vector<SparseTerm>& t) {
    const long n = static_cast<long>(a.size());
    for (long k = 0; k < n; ++k) {
        for (size_t s = 1; s < t.size() && t[s].exponent <= k; ++s) {
            const long c = t[s].coeff;
            if (c > 0)
                mpz_submul_ui(a[k].get_mpz_t(), a[k - t[s].exponent].get_mpz_t(), static_cast<unsigned long>(c));
            else
                mpz_addmul_ui(a[k].get_mpz_t(), a[k - t[s].exponent].get_mpz_t(), static_cast<unsigned long>(-c));
        }
    }
}

using u64 = std::uint64_t;
using i128 = __int128;

// Residues stay below 2^62 and |coeff| < 2^20, so a row of products fits in 128 bits.
u64 reduce(i128 acc, u64 m) {
    i128 r = acc % static_cast<i128>(m);
    if (r < 0) r += m;
    return static_cast<u64>(r);
}

void mul_sparse_mod(std::vector<u64>& a, const std::vector<SparseTerm>& t, u64 m) {
    const long n = static_cast<long>(a.size());
    for (long k = n - 1; k >= 0; --k) {
        i128 acc = a[k];
        for (size_t s = 1; s < t.size() && t[s].exponent <= k; ++s)
            acc += static_cast<i128>(t[s].coeff) * a[k - t[s].exponent];
        a[k] = reduce(acc, m);
    }
}

void div_sparse_mod(std::vector<u64>& a, const std::vector<SparseTerm>& t, u64 m) {
    const long n = static_cast<long>(a.size());
    for (long k = 0; k < n; ++k) {
        i128 acc = a[k];
        for (size_t s = 1; s < t.size() && t[s].exponent <= k; ++s)
            acc -= static_cast<i128>(t[s].coeff) * a[k - t[s].exponent];
        a[k] = reduce(acc, m);
    }
}

void require(bool cond, const std::string& what) {
    if (!cond) throw std::invalid_argument(what);
}

}  // namespace

LaurentSeries eta_series(long j, long prec) {
    require(j >= 1, "eta_series: step must be positive");
    require(prec >= 1, "eta_series: prec must be >= 1");
    Dense a(static_cast<size_t>(prec));
    a[0] = 1;
    for (long k = 1;; ++k) {
        const long e1 = j * k * (3 * k - 1) / 2;
        if (e1 >= prec) break;
        const int sign = (k % 2 == 0) ? 1 : -1;
        a[e1] = sign;
        const long e2 = j * k * (3 * k + 1) / 2;
        if (e2 < prec) a[e2] = sign;
    }
    return LaurentSeries(0, std::move(a));
}

LaurentSeries eta_product(const EtaSpec& spec, long prec) {
    require(!spec.factors.empty(), "eta_product: no factors");
    LaurentSeries acc = LaurentSeries::monomial(0, BigInt(1), prec);
    for (const auto& [step, e] : spec.factors) {
        if (e == 0) continue;
        acc = series::mul(acc, series::pow(eta_series(step, prec), e));
    }
    return series::shift(acc, spec.monomial_shift);
}

LaurentSeries pochhammer_inf(long a, long m, bool negate_arg, long prec) {
    require(a >= 1 && m >= 1, "pochhammer_inf: need a >= 1 and m >= 1");
    Dense d = unit_dense(prec);
    for (long e = a; e < prec; e += m) mul_binomial(d, e, negate_arg ? 1 : -1);
    return LaurentSeries(0, std::move(d));
}

LaurentSeries pochhammer_fin(long a, long m, bool negate_arg, long n, long prec) {
    require(a >= 0 && m >= 0 && n >= 0, "pochhammer_fin: negative argument");
    Dense d = unit_dense(prec);
    for (long k = 0; k < n; ++k) {
        const long e = a + m * k;
        if (e == 0) {
            // factor 1 -/+ 1
            if (!negate_arg) return LaurentSeries::zero(0, prec);
            for (auto& c : d) c *= 2;
            continue;
        }
        if (e < prec) mul_binomial(d, e, negate_arg ? 1 : -1);
    }
    return LaurentSeries(0, std::move(d));
}

LaurentSeries build_gamma(long prec) { return eta_product({{{1, 2}, {10, 1}}, 0}, prec); }

LaurentSeries build_delta(long prec) { return eta_product({{{2, 1}, {5, 2}}, 0}, prec); }

LaurentSeries build_xi(long prec) {
    require(prec >= 2, "build_xi: prec must be >= 2");
    return eta_product({{{2, 1}, {10, 3}, {1, -3}, {5, -1}}, 1}, prec - 1);
}

LaurentSeries build_R(long prec) {
    require(prec >= 1, "build_R: prec must be >= 1");
    auto num = series::mul(pochhammer_inf(1, 5, false, prec), pochhammer_inf(4, 5, false, prec));
    auto den = series::mul(pochhammer_inf(2, 5, false, prec), pochhammer_inf(3, 5, false, prec));
    return series::mul(num, series::invert(den));
}

LaurentSeries spt_series(long prec) {
    require(prec >= 1, "spt_series: prec must be >= 1");
    Dense a = unit_dense(prec);
    const auto j2 = jacobi_cube(2, prec);
    const auto j1 = jacobi_cube(1, prec);
    for (int r = 0; r < 3; ++r) mul_sparse(a, j2);
    for (int r = 0; r < 2; ++r) div_sparse(a, j1);
    return LaurentSeries(0, std::move(a));
}

std::vector<std::uint64_t> spt_series_mod(long prec, std::uint64_t modulus) {
    require(prec >= 1, "spt_series_mod: prec must be >= 1");
    require(modulus >= 2 && modulus < (u64{1} << 62), "spt_series_mod: modulus out of range");
    std::vector<u64> a(static_cast<size_t>(prec), 0);
    a[0] = 1;
    const auto j2 = jacobi_cube(2, prec);
    const auto j1 = jacobi_cube(1, prec);
    for (int r = 0; r < 3; ++r) mul_sparse_mod(a, j2, modulus);
    for (int r = 0; r < 2; ++r) div_sparse_mod(a, j1, modulus);
    return a;
}

namespace {

// Sum over partitions of `remaining` into distinct-size blocks of parts >= min_part
// (odd parts < limit) of 2^{number of distinct sizes}.
std::uint64_t overlined_weight(long remaining, long min_part, long limit) {
    if (remaining == 0) return 1;
    std::uint64_t total = 0;
    for (long p = min_part; p <= remaining; ++p) {
        if (p % 2 == 1 && p >= limit) continue;
        for (long used = p; used <= remaining; used += p) total += 2 * overlined_weight(remaining - used, p + 1, limit);
    }
    return total;
}

}  // namespace

BigInt spt_oracle(long n) {
    require(n >= 1, "spt_oracle: n must be >= 1");
    BigInt total = 0;
    for (long s = 1; s <= n; ++s) {
        for (long mult = 1; mult * s <= n; ++mult) {
            const std::uint64_t w = overlined_weight(n - mult * s, s + 1, 2 * s);
            total += BigInt(static_cast<unsigned long>(mult)) * BigInt(static_cast<unsigned long>(w));
        }
    }
    return total;
}

LaurentSeries adsy_sum(long prec) {
    require(prec >= 2, "adsy_sum: prec must be >= 2");
    Dense total(static_cast<size_t>(prec));
    for (long n = 1; n < prec; ++n) {
        const long len = prec - n;
        Dense t = unit_dense(len);
        // (-q^{n+1}; q)_n / (q^{n+1}; q)_n
        for (long k = 0; k < n; ++k) {
            const long e = n + 1 + k;
            if (e >= len) break;
            mul_binomial(t, e, +1);
            div_binomial(t, e, -1);
        }
        // (-q^{2n+2}; q^2)_inf / (q^{2n+2}; q^2)_inf
        for (long e = 2 * n + 2; e < len; e += 2) {
            mul_binomial(t, e, +1);
            div_binomial(t, e, -1);
        }
        // 1 / (1 - q^n)^2
        if (n < len) {
            div_binomial(t, n, -1);
            div_binomial(t, n, -1);
        }
        for (long k = 0; k < len; ++k) total[n + k] += t[k];
    }
    return LaurentSeries(0, std::move(total));
}

}  // namespace qlab::builders
