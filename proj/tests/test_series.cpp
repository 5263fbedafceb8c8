#include "support.hpp"

#include <qlab/series.hpp>

#include <doctest.h>

using namespace qlab;
using namespace qlab::series;
using testing_support::random_series;
using testing_support::random_unit_series;

namespace {

LaurentSeries poly(std::initializer_list<long> c, long prec, long offset = 0) {
    std::vector<BigInt> v;
    for (long x : c) v.emplace_back(x);
    v.resize(static_cast<size_t>(prec - offset));
    return LaurentSeries(offset, std::move(v));
}

}  // namespace

TEST_CASE("window semantics") {
    const auto f = poly({0, 3, 4}, 5, 0);
    CHECK(f[1] == 3);
    CHECK(f[-4] == 0);
    CHECK_THROWS_AS(f[5], PrecisionExceeded);
    CHECK(f.valuation() == 1);
    CHECK(LaurentSeries::zero(2, 7).is_zero_window());
    CHECK_FALSE(LaurentSeries::zero(2, 7).valuation());
}

TEST_CASE("addition keeps the shorter window") {
    const auto f = poly({1, 2, 3}, 3);
    const auto g = poly({0, 0, 1, 1, 1}, 8, 2);
    const auto h = f + g;
    CHECK(h.prec() == 3);
    CHECK(h[2] == 3);
    CHECK(h[0] == 1);
}

TEST_CASE("product precision and values") {
    // (1 + q)(1 - q) = 1 - q^2
    const auto f = poly({1, 1}, 10);
    const auto g = poly({1, -1}, 10);
    const auto h = f * g;
    CHECK(h.prec() == 10);
    CHECK(h[0] == 1);
    CHECK(h[1] == 0);
    CHECK(h[2] == -1);
    for (long n = 3; n < 10; ++n) CHECK(h[n] == 0);

    // Offsets add; precision is min(prec_f + off_g, prec_g + off_f).
    const auto a = LaurentSeries(-2, {BigInt(1), BigInt(5)});  // [-2, 0)
    const auto b = LaurentSeries(3, {BigInt(2), BigInt(0), BigInt(1)});  // [3, 6)
    const auto c = a * b;
    CHECK(c.offset() == 1);
    CHECK(c.prec() == std::min(0 + 3, 6 - 2));
    CHECK(c[1] == 2);
    CHECK(c[2] == 10);
}

TEST_CASE("inverse of 1 - q is the geometric series") {
    const auto inv = invert(poly({1, -1}, 12));
    CHECK(inv.prec() == 12);
    for (long n = 0; n < 12; ++n) CHECK(inv[n] == 1);
}

TEST_CASE("inverse of E(q) counts partitions") {
    std::vector<BigInt> e(6);
    e[0] = 1;
    for (long k = 1; k < 6; ++k)
        for (long n = 5; n >= k; --n) e[n] -= e[n - k];
    const auto p = invert(LaurentSeries(0, e));
    const long want[] = {1, 1, 2, 3, 5, 7};
    for (long n = 0; n < 6; ++n) CHECK(p[n] == want[n]);
}

TEST_CASE("inverse with positive valuation") {
    // q^2 (1 + q) on [2, 10) -> q^-2 (1 - q + q^2 - ...) on [-2, 6)
    const auto inv = invert(poly({0, 0, 1, 1}, 10));
    CHECK(inv.offset() == -2);
    CHECK(inv.prec() == 6);
    for (long n = -2; n < 6; ++n) CHECK(inv[n] == ((n + 2) % 2 == 0 ? 1 : -1));
}

TEST_CASE("inverse rejects non-unit leading coefficients and empty windows") {
    CHECK_THROWS_AS(invert(poly({2, 1}, 5)), NonUnitLeadingCoefficient);
    CHECK_THROWS_AS(invert(LaurentSeries::zero(0, 5)), NonUnitLeadingCoefficient);
    CHECK_THROWS_AS(invert(LaurentSeries()), EmptyPrecision);
}

TEST_CASE("powers") {
    const auto f = poly({1, 1}, 8);
    const auto cube = pow(f, 3);
    const long want[] = {1, 3, 3, 1, 0, 0, 0, 0};
    for (long n = 0; n < 8; ++n) CHECK(cube[n] == want[n]);
    const auto inv2 = pow(f, -2);  // sum (-1)^n (n+1) q^n
    for (long n = 0; n < 8; ++n) CHECK(inv2[n] == (n % 2 ? -(n + 1) : n + 1));
    CHECK(pow(f, 0)[0] == 1);
}

TEST_CASE("shift, substitution and U5") {
    const auto f = poly({1, 2, 3, 4}, 4);
    const auto s = shift(f, -3);
    CHECK(s.offset() == -3);
    CHECK(s[-2] == 2);
    const auto g = substitute_power(f, 5);
    CHECK(g.prec() == 5 * 3 + 1);
    CHECK(g[5] == 2);
    CHECK(g[4] == 0);
    CHECK(g[15] == 4);
    const auto back = atkin_u5(g);
    CHECK(back.prec() == 4);
    for (long n = 0; n < 4; ++n) CHECK(back[n] == f[n]);
}

TEST_CASE("extract windows") {
    std::vector<BigInt> c;
    for (long n = 0; n < 23; ++n) c.emplace_back(n);
    const LaurentSeries f(0, c);
    const auto e = extract(f, 5, 2);
    CHECK(e.offset() == 0);
    CHECK(e.prec() == 5);  // ceil((23 - 2) / 5)
    for (long n = 0; n < 5; ++n) CHECK(e[n] == 5 * n + 2);
    // Negative offsets: a(5n + 1) from [-7, 4).
    const LaurentSeries g(-7, std::vector<BigInt>(11, BigInt(1)));
    const auto h = extract(g, 5, 1);
    CHECK(h.offset() == -1);  // ceil((-7 - 1)/5)
    CHECK(h.prec() == 1);     // ceil((4 - 1)/5)
}

TEST_CASE("reduce mod") {
    const auto f = poly({18, 720, 7625}, 3);
    const auto r = reduce_mod(f, BigInt(5));
    CHECK(r[0] == 3);
    CHECK(r[1] == 0);
    CHECK(r[2] == 0);
    CHECK(reduce_mod(poly({-1}, 1), BigInt(5))[0] == 4);
}

TEST_CASE("equality requires enough precision") {
    const auto f = poly({1, 2}, 2);
    const auto g = poly({1, 2, 3}, 3);
    CHECK(equal_upto(f, g, 2));
    CHECK_THROWS_AS(equal_upto(f, g, 3), PrecisionExceeded);
    CHECK(first_difference(g, poly({1, 2, 4}, 3), 3) == 2);
    CHECK_THROWS_AS(truncate(f, 3), PrecisionExceeded);
    CHECK_THROWS_AS(coefficient(f, 2), PrecisionExceeded);
}

TEST_CASE("json round trip keeps big coefficients as strings") {
    BigInt big = from_decimal("1024000000000000000000");
    const LaurentSeries f(-1, {BigInt(3), big, BigInt(-7)});
    const auto j = to_json(f);
    CHECK(j["coeffs"][1] == "1024000000000000000000");
    const auto g = from_json(nlohmann::json::parse(j.dump()));
    CHECK(g.offset() == -1);
    CHECK(g.prec() == 2);
    CHECK(g[0] == big);
}

TEST_CASE("property: ring axioms on random windows") {
    std::mt19937_64 rng(20240501);
    for (int trial = 0; trial < 40; ++trial) {
        const auto f = random_series(rng, static_cast<long>(rng() % 5) - 2, 12);
        const auto g = random_series(rng, static_cast<long>(rng() % 5) - 2, 10);
        const auto h = random_series(rng, static_cast<long>(rng() % 5) - 2, 9);
        // Windows may differ (f - f keeps f's window); values agree on the common one.
        auto same = [](const LaurentSeries& a, const LaurentSeries& b) {
            CHECK(equal_upto(a, b, std::min(a.prec(), b.prec())));
        };
        same(f + g, g + f);
        same(f * g, g * f);
        same((f + g) + h, f + (g + h));
        same((f * g) * h, f * (g * h));
        same(f * (g + h), f * g + f * h);
        same(f - f + g, g);
    }
}

TEST_CASE("property: products agree with the schoolbook product on the claimed window") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const long of = static_cast<long>(rng() % 7) - 3, og = static_cast<long>(rng() % 7) - 3;
        const auto f = random_series(rng, of, 1 + static_cast<long>(rng() % 15));
        const auto g = random_series(rng, og, 1 + static_cast<long>(rng() % 15));
        const auto h = f * g;
        const auto ref = testing_support::naive_product(f.coeffs(), g.coeffs());
        CHECK(h.offset() == of + og);
        CHECK(h.prec() == std::min(f.prec() + og, g.prec() + of));
        for (long n = h.offset(); n < h.prec(); ++n) CHECK(h[n] == ref[static_cast<size_t>(n - of - og)]);
    }
}

TEST_CASE("property: precision soundness") {
    // Changing input coefficients outside their windows cannot move the claimed
    // window of the result: extend inputs by random tails and compare.
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        const auto f = random_unit_series(rng, static_cast<long>(rng() % 3), 10);
        const auto g = random_series(rng, static_cast<long>(rng() % 4) - 1, 9);
        auto extend = [&](const LaurentSeries& s) {
            auto c = s.coeffs();
            for (int k = 0; k < 6; ++k) c.emplace_back(static_cast<long>(rng() % 100) - 50);
            return LaurentSeries(s.offset(), std::move(c));
        };
        const auto fe = extend(f), ge = extend(g);
        const auto p1 = f * g, p2 = fe * ge;
        CHECK(equal_upto(p1, p2, p1.prec()));
        const auto i1 = invert(f), i2 = invert(fe);
        CHECK(equal_upto(i1, i2, i1.prec()));
        const auto s1 = substitute_power(g, 3), s2 = substitute_power(ge, 3);
        CHECK(equal_upto(s1, s2, s1.prec()));
        const auto e1 = extract(g, 5, 3), e2 = extract(ge, 5, 3);
        CHECK(equal_upto(e1, e2, e1.prec()));
        const auto w1 = pow(f, 3), w2 = pow(fe, 3);
        CHECK(equal_upto(w1, w2, w1.prec()));
    }
}

TEST_CASE("property: inverse really inverts") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        const auto f = random_unit_series(rng, static_cast<long>(rng() % 5) - 2, 14);
        const auto one = f * invert(f);
        CHECK(one.offset() <= 0);
        for (long n = one.offset(); n < one.prec(); ++n) CHECK(one[n] == (n == 0 ? 1 : 0));
    }
}

TEST_CASE("property: U5 law U(f(q^5) g) = f U(g), and U5 undoes substitution") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const auto f = random_series(rng, 0, 8);
        const auto g = random_series(rng, 0, 40);
        const auto lhs = atkin_u5(substitute_power(f, 5) * g);
        const auto rhs = f * atkin_u5(g);
        const long p = std::min(lhs.prec(), rhs.prec());
        CHECK(p >= 7);
        CHECK(equal_upto(lhs, rhs, p));
        const auto id = atkin_u5(substitute_power(f, 5));
        CHECK(id.prec() == f.prec());
        CHECK(equal_upto(id, f, f.prec()));
    }
}

TEST_CASE("property: residue extraction equals U5 after a shift") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const auto f = random_series(rng, 0, 37);
        for (long r = 0; r < 5; ++r) {
            const auto a = extract(f, 5, r);
            const auto b = atkin_u5(shift(f, -r));
            const long p = std::min(a.prec(), b.prec());
            for (long n = std::max(a.offset(), b.offset()); n < p; ++n) CHECK(a[n] == b[n]);
        }
    }
}
