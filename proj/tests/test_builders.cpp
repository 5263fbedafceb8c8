#include <qlab/builders.hpp>

#include <doctest.h>

using namespace qlab;
using namespace qlab::builders;
using series::LaurentSeries;

namespace {

// prod_{k >= 0, a + m k < prec} (1 + sign q^{a + m k}) by direct polynomial multiplication.
std::vector<BigInt> brute_product(long a, long m, long sign, long prec) {
    std::vector<BigInt> p(static_cast<size_t>(prec));
    p[0] = 1;
    for (long e = a; e < prec; e += m)
        for (long n = prec - 1; n >= e; --n) p[n] += sign * p[n - e];
    return p;
}

std::vector<BigInt> brute_mul(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
    std::vector<BigInt> out(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; i + j < a.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

}  // namespace

TEST_CASE("pentagonal expansion matches the product") {
    for (long j : {1L, 2L, 5L, 10L}) {
        const auto e = eta_series(j, 120);
        const auto want = brute_product(j, j, -1, 120);
        CHECK(e.prec() == 120);
        for (long n = 0; n < 120; ++n) CHECK(e[n] == want[n]);
    }
    const auto e = eta_series(1, 8);
    const long first[] = {1, -1, -1, 0, 0, 1, 0, 1};
    for (long n = 0; n < 8; ++n) CHECK(e[n] == first[n]);
}

TEST_CASE("pochhammer products") {
    const auto p = pochhammer_inf(2, 5, false, 60);
    const auto want = brute_product(2, 5, -1, 60);
    for (long n = 0; n < 60; ++n) CHECK(p[n] == want[n]);
    const auto m = pochhammer_inf(1, 2, true, 40);
    const auto want_m = brute_product(1, 2, 1, 40);
    for (long n = 0; n < 40; ++n) CHECK(m[n] == want_m[n]);
    // (-q^2; q)_1 = 1 + q^2
    const auto f = pochhammer_fin(2, 1, true, 1, 6);
    CHECK(f[0] == 1);
    CHECK(f[1] == 0);
    CHECK(f[2] == 1);
    CHECK(f[3] == 0);
    CHECK(pochhammer_fin(3, 2, false, 0, 5)[0] == 1);
}

TEST_CASE("eta products") {
    // E(q)^2 E(q^10) directly from brute products.
    const long prec = 50;
    const auto e1 = brute_product(1, 1, -1, prec);
    const auto e10 = brute_product(10, 10, -1, prec);
    const auto want = brute_mul(brute_mul(e1, e1), e10);
    const auto g = build_gamma(prec);
    for (long n = 0; n < prec; ++n) CHECK(g[n] == want[n]);

    const auto e2 = brute_product(2, 2, -1, prec);
    const auto e5 = brute_product(5, 5, -1, prec);
    const auto want_d = brute_mul(e2, brute_mul(e5, e5));
    const auto d = build_delta(prec);
    for (long n = 0; n < prec; ++n) CHECK(d[n] == want_d[n]);
}

TEST_CASE("xi has valuation 1 and leading coefficient 1") {
    const auto xi = build_xi(30);
    CHECK(xi.prec() == 30);
    CHECK(xi.valuation() == 1);
    CHECK(xi[1] == 1);
    // xi * E(q)^3 E(q^5) = q E(q^2) E(q^10)^3
    const long prec = 30;
    const auto e1 = eta_series(1, prec), e2 = eta_series(2, prec), e5 = eta_series(5, prec), e10 = eta_series(10, prec);
    const auto lhs = xi * series::pow(e1, 3) * e5;
    const auto rhs = series::shift(e2 * series::pow(e10, 3), 1);
    CHECK(series::equal_upto(lhs, rhs, std::min(lhs.prec(), rhs.prec())));
}

TEST_CASE("Rogers-Ramanujan quotient") {
    const auto r = build_R(40);
    // R(q) = 1 - q + q^2 - q^4 + q^5 - q^6 + q^7 ... check against direct products.
    const auto num = brute_mul(brute_product(1, 5, -1, 40), brute_product(4, 5, -1, 40));
    const auto den = brute_mul(brute_product(2, 5, -1, 40), brute_product(3, 5, -1, 40));
    const auto back = brute_mul(std::vector<BigInt>(r.coeffs().begin(), r.coeffs().end()), den);
    for (long n = 0; n < 40; ++n) CHECK(back[n] == num[n]);
    CHECK(r[0] == 1);
    CHECK(r[1] == -1);
}

TEST_CASE("spt oracle examples") {
    CHECK(spt_oracle(1) == 1);
    CHECK(spt_oracle(2) == 3);
    CHECK(spt_oracle(3) == 6);
    CHECK(spt_oracle(5) == 18);
}

TEST_CASE("spt series first coefficients") {
    const auto s = spt_series(5);
    const long want[] = {1, 6, 18, 44, 99};
    for (long n = 0; n < 5; ++n) CHECK(s[n] == want[n]);
}

TEST_CASE("spt series equals the plain eta quotient") {
    const long prec = 200;
    const auto direct = series::pow(eta_series(2, prec), 9) * series::pow(eta_series(1, prec), -6);
    const auto fast = spt_series(prec);
    CHECK(series::equal_upto(direct, fast, prec));
}

TEST_CASE("series index n matches the enumeration at 2n+1") {
    const auto s = spt_series(21);
    for (long n = 0; n <= 20; ++n) CHECK(s[n] == spt_oracle(2 * n + 1));
}

TEST_CASE("double sum matches the enumeration") {
    const auto a = adsy_sum(41);
    CHECK(a[1] == 1);
    CHECK(a[2] == 3);
    CHECK(a[3] == 6);
    CHECK(a[5] == 18);
    for (long n = 1; n <= 40; ++n) CHECK(a[n] == spt_oracle(n));
}

TEST_CASE("reduced spt series agrees with the exact one") {
    const long prec = 3000;
    const auto exact = spt_series(prec);
    for (std::uint64_t m : {std::uint64_t{244140625}, std::uint64_t{95367431640625ULL}, std::uint64_t{7}}) {
        const auto red = spt_series_mod(prec, m);
        REQUIRE(static_cast<long>(red.size()) == prec);
        for (long n = 0; n < prec; n += 37) {
            BigInt r;
            mpz_fdiv_r_ui(r.get_mpz_t(), exact[n].get_mpz_t(), m);
            CHECK(r == BigInt(static_cast<unsigned long>(red[n])));
        }
    }
}
