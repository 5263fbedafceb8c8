// One line per acceptance criterion; exit status 1 if any fails.

#include <qlab/builders.hpp>
#include <qlab/catalog.hpp>
#include <qlab/matrices.hpp>
#include <qlab/padic.hpp>
#include <qlab/xi_basis.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

using namespace qlab;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
    void require(const Report& r, const std::string& what) {
        if (r.passed()) return;
        std::string why = what + ": " + to_string(r.status);
        if (r.first_failure) why += " at " + r.first_failure->location + " (expected " + r.first_failure->expected +
                                    ", got " + r.first_failure->actual + ")";
        else if (!r.notes.empty()) why += " (" + r.notes.back() + ")";
        require(false, why);
    }
};

std::vector<BigInt> big(std::initializer_list<const char*> xs) {
    std::vector<BigInt> v;
    for (auto x : xs) v.push_back(from_decimal(x));
    return v;
}

Outcome oracle_agreement() {
    Outcome o;
    const auto adsy = builders::adsy_sum(41);
    for (long n = 1; n <= 40; ++n) o.require(builders::spt_oracle(n) == adsy[n], "spt(" + std::to_string(n) + ") vs double sum");
    const auto s = builders::spt_series(21);
    for (long n = 0; n <= 20; ++n) o.require(s[n] == builders::spt_oracle(2 * n + 1), "series index " + std::to_string(n));
    return o;
}

Outcome first_level() {
    Outcome o;
    o.require(matrices::verify_theorem_gf(1, 40), "level 1 at precision 40");
    const auto level = series::truncate(series::extract(builders::spt_series(200), 5, 2), 30);
    const auto e = xi_basis::express_in_xi_basis(level, xi_basis::Unit::Gamma, 29, 30);
    o.require(e.trimmed() == big({"18", "720", "7625", "32500", "50000"}), "vector extracted from the spt series");
    return o;
}

Outcome second_level() {
    Outcome o;
    o.require(matrices::verify_theorem_gf(2, 17), "level 2 at precision 17");
    o.require(matrices::verify_x_second(), "x_1 A against the printed coefficients");
    const auto x2 = matrices::step(matrices::x_first());
    o.require(x2.support() == 17, "support of x_1 A");
    o.require(x2.at(1) == 8327 && x2.at(17) == from_decimal("1024000000000000000000"), "end coefficients of x_1 A");
    return o;
}

Outcome modular_equation() {
    Outcome o;
    o.require(xi_basis::verify_modular_equation(60), "modular equation at 60");
    auto bad = xi_basis::RecurrencePolys::chern_hirschhorn();
    bad.coeffs[0][1] += 1;
    o.require(xi_basis::verify_modular_equation(60, bad).failed(), "perturbed coefficients must fail");
    return o;
}

Outcome initial_values() {
    Outcome o;
    o.require(xi_basis::verify_initial_values(xi_basis::ImageKind::V, 30), "alpha images");
    o.require(xi_basis::verify_initial_values(xi_basis::ImageKind::W, 30), "beta images");
    return o;
}

Outcome recurrences() {
    Outcome o;
    o.require(xi_basis::verify_recurrence(xi_basis::ImageKind::V, 8, 50), "V recurrence");
    o.require(xi_basis::verify_recurrence(xi_basis::ImageKind::W, 8, 50), "W recurrence");
    o.require(matrices::cross_check_matrix(matrices::MatrixKind::Alpha, 8, 41), "alpha rows vs images");
    o.require(matrices::cross_check_matrix(matrices::MatrixKind::Beta, 8, 41), "beta rows vs images");
    return o;
}

Outcome table() {
    Outcome o;
    o.require(padic::verify_table1(), "valuation table");
    return o;
}

Outcome matrix_bounds() {
    Outcome o;
    o.require(padic::verify_matrix_bounds(matrices::MatrixKind::Alpha, 12, 60), "alpha bounds");
    o.require(padic::verify_matrix_bounds(matrices::MatrixKind::Beta, 12, 60), "beta bounds");
    return o;
}

Outcome x_bounds() {
    Outcome o;
    o.require(padic::verify_x_bounds(6), "x-vector bounds through level 6");
    return o;
}

Outcome third_level() {
    Outcome o;
    const auto r = matrices::verify_theorem_gf(3, 8);
    o.require(r, "level 3 at precision 8");
    o.require(matrices::theorem_series_length(3, 8) >= 938, "series reaches spt(1875)");
    return o;
}

Outcome congruences() {
    Outcome o;
    using padic::CongruenceParams;
    using padic::Family;
    o.require(padic::verify_congruence_family({Family::Conj2, 1, 1, 30, false, -1}), "second family, ell 1");
    o.require(padic::verify_congruence_family({Family::Conj1, 1, 1, 10, false, -1}), "first family, ell 1");
    o.require(padic::verify_congruence_family({Family::Conj1, 2, 1, 10, false, -1}), "first family, ell 2");
    o.require(padic::verify_congruence_family({Family::Conj2, 2, 1, 3, true, -1}), "second family, ell 2, reduced");
    return o;
}

Outcome dissection() {
    Outcome o;
    o.require(xi_basis::verify_dissection_E(100), "dissection of E");
    o.require(padic::verify_delta_classes(500), "vanishing classes of delta");
    return o;
}

Outcome determinism() {
    Outcome o;
    auto render = [] {
        const auto res = catalog::run_all({60, 1, false});
        std::string out;
        for (const auto& r : res.reports) out += to_json(r, true).dump() + "\n";
        return out;
    };
    const auto a = render(), b = render();
    o.require(a == b, "two stable runs differ");
    o.require(!a.empty(), "empty output");
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"oracle agreement", oracle_agreement},
        {"level-1 identity", first_level},
        {"level-2 identity and printed x_2", second_level},
        {"modular equation", modular_equation},
        {"initial values", initial_values},
        {"recurrences and row cross-check", recurrences},
        {"valuation table", table},
        {"matrix valuation bounds", matrix_bounds},
        {"x-vector valuation bounds", x_bounds},
        {"level-3 identity", third_level},
        {"congruence families", congruences},
        {"5-dissection of E", dissection},
        {"determinism", determinism},
    };
    int failures = 0;
    for (size_t k = 0; k < criteria.size(); ++k) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!o.ok) ++failures;
        std::printf("criterion %zu: %s  %s  (%.2f s)%s%s\n", k + 1, o.ok ? "PASS" : "FAIL", criteria[k].first.c_str(),
                    secs, o.ok ? "" : "  ", o.detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
