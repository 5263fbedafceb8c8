#include <qlab/builders.hpp>
#include <qlab/matrices.hpp>
#include <qlab/xi_basis.hpp>

#include <doctest.h>

using namespace qlab;
using namespace qlab::matrices;

namespace {

std::vector<BigInt> row(const BandedMatrix& m, long i) { return m.rows[i - 1]; }
std::vector<BigInt> big(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("first rows") {
    const auto a = expand_matrix(MatrixKind::Alpha, 3);
    const auto b = expand_matrix(MatrixKind::Beta, 3);
    CHECK(row(a, 1) == big({-1, 0, 0, 0, 0}));
    CHECK(row(b, 1) == big({-1, 0, 0, 0, 0}));
    CHECK(row(a, 2) == big({1, 5, 0, 0, 0, 0, 0, 0, 0, 0}));
    CHECK(row(b, 2) == big({3, 115, 1220, 5200, 8000, 0, 0, 0, 0, 0}));
    for (long i = 1; i <= 3; ++i) CHECK(static_cast<long>(a.rows[i - 1].size()) == 5 * i);
    CHECK(a.at(2, 11) == 0);
}

TEST_CASE("generating function rows equal the seeded recurrence rows") {
    for (auto k : {MatrixKind::Alpha, MatrixKind::Beta}) {
        const auto gf = expand_matrix(k, 20);
        const auto seeded = expand_matrix_from_seeds(k, 20);
        for (long i = 1; i <= 20; ++i) CHECK(gf.rows[i - 1] == seeded.rows[i - 1]);
        CHECK(verify_matrix_generation(k, 12).passed());
    }
}

TEST_CASE("rows agree with the U-image expansions") {
    CHECK(cross_check_matrix(MatrixKind::Alpha, 6, 31).passed());
    CHECK(cross_check_matrix(MatrixKind::Beta, 6, 31).passed());
    CHECK_THROWS_AS(cross_check_matrix(MatrixKind::Alpha, 6, 20), PrecisionExceeded);
}

TEST_CASE("perturbed numerator fails the cross-check at row 2") {
    auto gf = BivariateRational::for_kind(MatrixKind::Alpha);
    REQUIRE(gf.numerator[2][2] == 210);
    gf.numerator[2][2] = 211;
    const auto r = cross_check_matrix(gf, MatrixKind::Alpha, 6, 31);
    CHECK(r.failed());
    REQUIRE(r.first_failure);
    CHECK(r.first_failure->location.rfind("(2,", 0) == 0);
}

TEST_CASE("x_1 and x_2") {
    CHECK(x_first().entries == big({18, 720, 7625, 32500, 50000}));
    const auto x2 = step(x_first());
    CHECK(x2.level == 2);
    CHECK(x2.entries == printed_x_second());
    CHECK(x2.support() == 17);
    CHECK(x2.at(1) == 8327);
    CHECK(x2.at(17) == from_decimal("1024000000000000000000"));
    CHECK(verify_x_second().passed());
}

TEST_CASE("support grows by at most a factor 5") {
    const auto xs = x_vectors(5);
    for (size_t m = 1; m < xs.size(); ++m) CHECK(xs[m].support() <= 5 * xs[m - 1].support());
    CHECK_THROWS_AS(x_vectors(7), std::invalid_argument);
}

TEST_CASE("three routes for x M agree") {
    CHECK(verify_x_routes(4).passed());
    const auto xs = x_vectors(3);
    CHECK(step_direct(xs[1]).entries == xs[2].entries);
}

TEST_CASE("reduced step is the exact step mod 5^k") {
    const auto xs = x_vectors(4);
    std::vector<long> targets;
    for (long j = 1; j <= 5 * xs[2].support(); ++j) targets.push_back(1 + j % 17);
    const auto red = step_mod(xs[2], targets);
    for (long j = 1; j <= red.support(); ++j) {
        BigInt mod, want;
        mpz_ui_pow_ui(mod.get_mpz_t(), 5, static_cast<unsigned long>(targets[j - 1]));
        mpz_fdiv_r(want.get_mpz_t(), xs[3].at(j).get_mpz_t(), mod.get_mpz_t());
        CHECK(red.at(j) == want);
    }
    CHECK_THROWS_AS(step_mod(red, {1}), std::invalid_argument);
}

TEST_CASE("series length for the level-m identity") {
    CHECK(theorem_series_length(1, 40) == 5 * 39 + 2 + 1);
    CHECK(theorem_series_length(3, 8) == 125 * 7 + 62 + 1);
}

TEST_CASE("level identities") {
    CHECK(verify_theorem_gf(1, 40).passed());
    CHECK(verify_theorem_gf(2, 17).passed());
    CHECK(verify_theorem_gf(3, 8).passed());
    CHECK(verify_theorem_gf(4, 4).passed());
    const auto short_series = builders::spt_series(100);
    CHECK_THROWS_AS(verify_theorem_gf(2, 17, &short_series), PrecisionExceeded);
}

TEST_CASE("residue-2 extraction of the spt series gives the level-1 vector") {
    const auto level = series::extract(builders::spt_series(200), 5, 2);
    const auto e = xi_basis::express_in_xi_basis(series::truncate(level, 30), xi_basis::Unit::Gamma, 29, 30);
    CHECK(e.trimmed() == x_first().entries);
}

TEST_CASE("exports") {
    const auto m = expand_matrix(MatrixKind::Beta, 2);
    const auto j = to_json(m);
    CHECK(j["kind"] == "beta");
    CHECK(j["rows"][1][1] == "115");
    CHECK(to_csv(m).rfind("i\\j,1,2", 0) == 0);
    const auto x = to_json(x_first());
    CHECK(x["entries"][4] == "50000");
    CHECK_FALSE(x.contains("precision"));
}
