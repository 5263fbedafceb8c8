#include <qlab/catalog.hpp>

#include <qlab/builders.hpp>
#include <qlab/errors.hpp>
#include <qlab/matrices.hpp>
#include <qlab/padic.hpp>
#include <qlab/xi_basis.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <thread>

namespace qlab::catalog {

namespace {

using matrices::MatrixKind;
using xi_basis::ImageKind;

// Per-check defaults, matching the desk-scale ranges documented in the README.
struct Defaults {
    long prec = 0, imax = 0, jmax = 0, mmax = 0, ell = 0, kmax = 0, nmax = 0;
};

struct Entry {
    CheckInfo info;
    Defaults defaults;
    std::function<Report(const Params&, SeriesCache&)> run;
};

long get(const std::optional<long>& v, long fallback) { return v.value_or(fallback); }

void require(bool ok, const std::string& what) {
    if (!ok) throw InvalidParams(what);
}

void require_at_least(long value, long lo, std::string_view name) {
    require(value >= lo, "--" + std::string(name) + " must be >= " + std::to_string(lo) + " (got " +
                             std::to_string(value) + ")");
}

void require_at_most(long value, long hi, std::string_view name) {
    require(value <= hi, "--" + std::string(name) + " must be <= " + std::to_string(hi) + " (got " +
                             std::to_string(value) + ")");
}

Report wang_oracle(long prec) {
    Report r;
    r.precision_used = prec;
    const auto s = builders::spt_series(prec);
    for (long n = 0; n < prec; ++n) {
        const auto want = builders::spt_oracle(2 * n + 1);
        if (s[n] != want)
            r.fail("coefficient of q^" + std::to_string(n) + " vs spt(" + std::to_string(2 * n + 1) + ")",
                   to_decimal(want), to_decimal(s[n]));
    }
    r.note("series coefficient n compared with the enumeration at 2n+1 for n < " + std::to_string(prec));
    return r;
}

Report adsy_oracle(long prec) {
    Report r;
    r.precision_used = prec;
    const auto s = builders::adsy_sum(prec);
    for (long n = 1; n < prec; ++n) {
        const auto want = builders::spt_oracle(n);
        if (s[n] != want)
            r.fail("coefficient of q^" + std::to_string(n), to_decimal(want), to_decimal(s[n]));
    }
    return r;
}

Report theorem(long m, long prec, SeriesCache& cache) {
    const auto spt = cache.get(matrices::theorem_series_length(m, prec));
    return matrices::verify_theorem_gf(m, prec, spt.get());
}

Report congruence(padic::Family family, const Params& p, const Defaults& d, SeriesCache& cache) {
    padic::CongruenceParams c;
    c.family = family;
    c.ell = get(p.ell, d.ell);
    c.k_max = get(p.kmax, d.kmax);
    c.n_max = get(p.nmax, d.nmax);
    c.fast_mod = p.fast_mod;
    c.max_series = get(p.max_series, p.fast_mod ? kDefaultFastSeriesCap : kDefaultExactSeriesCap);
    const long need = padic::congruence_series_length(c);
    if (need > c.max_series) {
        std::string hint = c.fast_mod ? "raise --max-series" : "rerun with --fast-mod or raise --max-series";
        throw PrecisionExceeded("needs spt series length " + std::to_string(need) + ", cap is " +
                                    std::to_string(c.max_series) + "; " + hint,
                                need);
    }
    if (c.fast_mod) return padic::verify_congruence_family(c);
    const auto spt = cache.get(need);
    return padic::verify_congruence_family(c, spt.get());
}

Report combine(std::initializer_list<std::pair<const char*, Report>> parts) {
    Report r;
    for (const auto& [label, sub] : parts) r.absorb(sub, label);
    return r;
}

const std::vector<Entry>& entries() {
    static const std::vector<Entry> list = [] {
        std::vector<Entry> e;
        auto add = [&](std::string name, std::string summary, std::vector<std::string_view> accepts, Defaults d,
                       std::function<Report(const Params&, SeriesCache&)> run) {
            e.push_back({{std::move(name), std::move(summary), std::move(accepts)}, d, std::move(run)});
        };

        add("wang-oracle", "eta-quotient series vs enumeration of overpartitions at odd arguments", {kPrec},
            {.prec = 21}, [](const Params& p, SeriesCache&) {
                const long prec = get(p.prec, 21);
                require_at_least(prec, 1, kPrec);
                return wang_oracle(prec);
            });
        add("adsy-oracle", "double-sum generating function vs enumeration", {kPrec}, {.prec = 41},
            [](const Params& p, SeriesCache&) {
                const long prec = get(p.prec, 41);
                require_at_least(prec, 2, kPrec);
                return adsy_oracle(prec);
            });
        add("gf1", "level-1 identity with x_1 = (18, 720, 7625, 32500, 50000)", {kPrec}, {.prec = 40},
            [](const Params& p, SeriesCache& cache) {
                const long prec = get(p.prec, 40);
                require_at_least(prec, 1, kPrec);
                return theorem(1, prec, cache);
            });
        add("gf2", "level-2 identity, and x_1 A against the 17 printed coefficients", {kPrec}, {.prec = 17},
            [](const Params& p, SeriesCache& cache) {
                const long prec = get(p.prec, 17);
                require_at_least(prec, 1, kPrec);
                return combine({{"series", theorem(2, prec, cache)}, {"x_1 A", matrices::verify_x_second()}});
            });
        add("theorem", "level-m identity for the m-fold residue-2 extraction", {kPrec, kMmax},
            {.prec = 8, .mmax = 3}, [](const Params& p, SeriesCache& cache) {
                const long prec = get(p.prec, 8), m = get(p.mmax, 3);
                require_at_least(prec, 1, kPrec);
                require_at_least(m, 1, kMmax);
                require_at_most(m, matrices::kDefaultMaxLevel, kMmax);
                return theorem(m, prec, cache);
            });
        add("modeq", "quintic modular equation for xi", {kPrec}, {.prec = 60}, [](const Params& p, SeriesCache&) {
            const long prec = get(p.prec, 60);
            require_at_least(prec, 1, kPrec);
            return xi_basis::verify_modular_equation(prec);
        });
        add("initvals-alpha", "U-images v_1..v_5 against the printed expansions", {kPrec}, {.prec = 30},
            [](const Params& p, SeriesCache&) {
                const long prec = get(p.prec, 30);
                require_at_least(prec, 1, kPrec);
                return xi_basis::verify_initial_values(ImageKind::V, prec);
            });
        add("initvals-beta", "U-images w_1..w_5 against the printed expansions", {kPrec}, {.prec = 30},
            [](const Params& p, SeriesCache&) {
                const long prec = get(p.prec, 30);
                require_at_least(prec, 1, kPrec);
                return xi_basis::verify_initial_values(ImageKind::W, prec);
            });
        add("recurrence-v", "quintic recurrence and degree bound for v_i", {kPrec, kImax}, {.prec = 50, .imax = 8},
            [](const Params& p, SeriesCache&) {
                const long prec = get(p.prec, 50), imax = get(p.imax, 8);
                require_at_least(prec, 1, kPrec);
                require_at_least(imax, 6, kImax);
                return xi_basis::verify_recurrence(ImageKind::V, imax, prec);
            });
        add("recurrence-w", "quintic recurrence and degree bound for w_i", {kPrec, kImax}, {.prec = 50, .imax = 8},
            [](const Params& p, SeriesCache&) {
                const long prec = get(p.prec, 50), imax = get(p.imax, 8);
                require_at_least(prec, 1, kPrec);
                require_at_least(imax, 6, kImax);
                return xi_basis::verify_recurrence(ImageKind::W, imax, prec);
            });
        add("dissection-E", "5-dissection of E(q) through the Rogers-Ramanujan quotient", {kPrec}, {.prec = 100},
            [](const Params& p, SeriesCache&) {
                const long prec = get(p.prec, 100);
                require_at_least(prec, 1, kPrec);
                return xi_basis::verify_dissection_E(prec);
            });
        add("matrix-alpha", "rows of A from the generating function vs the seeded recurrence", {kImax}, {.imax = 12},
            [](const Params& p, SeriesCache&) {
                const long imax = get(p.imax, 12);
                require_at_least(imax, 1, kImax);
                return matrices::verify_matrix_generation(MatrixKind::Alpha, imax);
            });
        add("matrix-beta", "rows of B from the generating function vs the seeded recurrence", {kImax}, {.imax = 12},
            [](const Params& p, SeriesCache&) {
                const long imax = get(p.imax, 12);
                require_at_least(imax, 1, kImax);
                return matrices::verify_matrix_generation(MatrixKind::Beta, imax);
            });
        add("matrix-crosscheck", "rows of A and B against xi-basis expansions of the U-images", {kPrec, kImax},
            {.prec = 41, .imax = 8}, [](const Params& p, SeriesCache&) {
                const long imax = get(p.imax, 8);
                require_at_least(imax, 1, kImax);
                const long prec = get(p.prec, 5 * imax + 1);
                require_at_least(prec, 1, kPrec);
                return combine({{"alpha", matrices::cross_check_matrix(MatrixKind::Alpha, imax, prec)},
                                {"beta", matrices::cross_check_matrix(MatrixKind::Beta, imax, prec)}});
            });
        add("xvector", "x_2 against the printed vector; three routes for x M agree", {kMmax}, {.mmax = 4},
            [](const Params& p, SeriesCache&) {
                const long m = get(p.mmax, 4);
                require_at_least(m, 2, kMmax);
                require_at_most(m, 5, kMmax);
                return combine({{"x_1 A", matrices::verify_x_second()}, {"routes", matrices::verify_x_routes(m)}});
            });
        add("table1", "printed 5-adic orders of alpha_{i,j}, i <= 5, j <= 18", {}, {},
            [](const Params&, SeriesCache&) { return padic::verify_table1(); });
        add("bounds-alpha", "nu(alpha_{i,j}) >= floor((5j-i-1)/6)", {kImax, kJmax}, {.imax = 12, .jmax = 60},
            [](const Params& p, SeriesCache&) {
                const long imax = get(p.imax, 12), jmax = get(p.jmax, 60);
                require_at_least(imax, 1, kImax);
                require_at_least(jmax, 1, kJmax);
                return padic::verify_matrix_bounds(MatrixKind::Alpha, imax, jmax);
            });
        add("bounds-beta", "nu(beta_{i,j}) >= floor((5j-i-2)/6)", {kImax, kJmax}, {.imax = 12, .jmax = 60},
            [](const Params& p, SeriesCache&) {
                const long imax = get(p.imax, 12), jmax = get(p.jmax, 60);
                require_at_least(imax, 1, kImax);
                require_at_least(jmax, 1, kJmax);
                return padic::verify_matrix_bounds(MatrixKind::Beta, imax, jmax);
            });
        add("bounds-x", "5-adic bounds on x_m and nu(x_{m,1}) = 0", {kMmax}, {.mmax = 6},
            [](const Params& p, SeriesCache&) {
                const long m = get(p.mmax, 6);
                require_at_least(m, 1, kMmax);
                require_at_most(m, matrices::kDefaultMaxLevel, kMmax);
                return padic::verify_x_bounds(m);
            });
        add("h-monotone", "h(i,k+2) >= h(i,k) for 4 <= k <= 5i", {kImax, kKmax}, {.imax = 12, .kmax = 60},
            [](const Params& p, SeriesCache&) {
                const long imax = get(p.imax, 12), kmax = get(p.kmax, 60);
                require_at_least(imax, 1, kImax);
                require_at_least(kmax, 4, kKmax);
                return padic::verify_h_monotonicity(imax, kmax);
            });
        add("conj1", "spt(5^(2k+l-1)(10n+5)) = spt(5^(l-1)(10n+5)) mod 5^l",
            {kEll, kKmax, kNmax, kFastMod, kMaxSeries}, {.ell = 1, .kmax = 1, .nmax = 10},
            [](const Params& p, SeriesCache& cache) {
                return congruence(padic::Family::Conj1, p, {.ell = 1, .kmax = 1, .nmax = 10}, cache);
            });
        add("conj2", "spt(5^(2l)(10n+3)) = spt(5^(2l)(10n+7)) = 0 mod 5^(2l)",
            {kEll, kNmax, kFastMod, kMaxSeries}, {.ell = 1, .kmax = 0, .nmax = 30},
            [](const Params& p, SeriesCache& cache) {
                return congruence(padic::Family::Conj2, p, {.ell = 1, .kmax = 0, .nmax = 30}, cache);
            });
        add("cor19", "the two sample congruences mod 5^6", {kKmax, kNmax, kFastMod, kMaxSeries},
            {.ell = 1, .kmax = 1, .nmax = 3}, [](const Params& p, SeriesCache& cache) {
                return congruence(padic::Family::Cor19, p, {.ell = 1, .kmax = 1, .nmax = 3}, cache);
            });
        add("delta-classes", "coefficients of delta at exponents 1, 3 mod 5 vanish", {kPrec}, {.prec = 500},
            [](const Params& p, SeriesCache&) {
                const long prec = get(p.prec, 500);
                require_at_least(prec, 1, kPrec);
                return padic::verify_delta_classes(prec);
            });
        return e;
    }();
    return list;
}

const Entry* find_entry(std::string_view name) {
    for (const auto& e : entries())
        if (e.info.name == name) return &e;
    return nullptr;
}

bool accepts(const Entry& e, std::string_view key) {
    return std::find(e.info.accepts.begin(), e.info.accepts.end(), key) != e.info.accepts.end();
}

// Every parameter the check takes, resolved against its defaults; rejects the rest.
std::vector<std::pair<std::string, std::string>> resolve_params(const Entry& e, const Params& p) {
    std::vector<std::pair<std::string, std::string>> out;
    auto one = [&](std::string_view key, const std::optional<long>& v, long fallback) {
        if (!accepts(e, key)) {
            if (v) throw InvalidParams("check " + e.info.name + " does not take --" + std::string(key));
            return;
        }
        out.emplace_back(std::string(key), std::to_string(v.value_or(fallback)));
    };
    const auto& d = e.defaults;
    const long prec_default = e.info.name == "matrix-crosscheck" ? 5 * p.imax.value_or(d.imax) + 1 : d.prec;
    one(kPrec, p.prec, prec_default);
    one(kImax, p.imax, d.imax);
    one(kJmax, p.jmax, d.jmax);
    one(kMmax, p.mmax, d.mmax);
    one(kEll, p.ell, d.ell);
    one(kKmax, p.kmax, d.kmax);
    one(kNmax, p.nmax, d.nmax);
    if (accepts(e, kFastMod)) {
        out.emplace_back(std::string(kFastMod), p.fast_mod ? "true" : "false");
        const long cap = p.max_series.value_or(p.fast_mod ? kDefaultFastSeriesCap : kDefaultExactSeriesCap);
        out.emplace_back(std::string(kMaxSeries), std::to_string(cap));
    } else {
        if (p.fast_mod) throw InvalidParams("check " + e.info.name + " does not take --fast-mod");
        if (p.max_series) throw InvalidParams("check " + e.info.name + " does not take --max-series");
    }
    return out;
}

Report run_entry(const Entry& e, const Params& p, SeriesCache& cache,
                 const std::function<Report()>& override_run = nullptr) {
    auto params = resolve_params(e, p);
    const auto start = std::chrono::steady_clock::now();
    Report r;
    try {
        r = override_run ? override_run() : e.run(p, cache);
    } catch (const UnknownCheck&) {
        throw;
    } catch (const InvalidParams&) {
        throw;
    } catch (const PrecisionExceeded& ex) {
        r = Report{};
        std::string note = std::string("skipped: ") + ex.what();
        if (ex.required() >= 0) note += " (required " + std::to_string(ex.required()) + ")";
        r.skip(note);
    } catch (const std::invalid_argument& ex) {
        throw InvalidParams(e.info.name + ": " + ex.what());
    } catch (const SupportExceeded& ex) {
        r = Report{};
        r.fail("xi-expansion degree " + std::to_string(ex.index()), "0", ex.value());
    } catch (const std::exception& ex) {
        // Anything else is a broken identity surfacing as an exception.
        r = Report{};
        r.fail("exception", "no error", ex.what());
    }
    r.check = e.info.name;
    r.params = std::move(params);
    r.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    return r;
}

}  // namespace

const std::vector<CheckInfo>& checks() {
    static const std::vector<CheckInfo> list = [] {
        std::vector<CheckInfo> out;
        for (const auto& e : entries()) out.push_back(e.info);
        return out;
    }();
    return list;
}

const CheckInfo* find_check(std::string_view name) {
    const auto* e = find_entry(name);
    return e ? &e->info : nullptr;
}

std::shared_ptr<const series::LaurentSeries> SeriesCache::get(long len) {
    std::lock_guard lock(mu_);
    if (!series_ || series_->prec() < len) series_ = std::make_shared<const series::LaurentSeries>(builders::spt_series(len));
    return series_;
}

Report run_check(std::string_view name, const Params& params, SeriesCache* cache) {
    const auto* e = find_entry(name);
    if (!e) throw UnknownCheck("unknown check: " + std::string(name));
    SeriesCache local;
    return run_entry(*e, params, cache ? *cache : local);
}

Params budget_params(std::string_view name, long budget) {
    if (budget < kMinBudget) throw InvalidParams("budget must be >= " + std::to_string(kMinBudget));
    const auto* e = find_entry(name);
    if (!e) throw UnknownCheck("unknown check: " + std::string(name));
    Params p;
    const long b = budget;
    // Precision-driven checks track the budget; the rest keep their desk-scale defaults.
    if (name == "wang-oracle") p.prec = std::min(21L, b);
    else if (name == "adsy-oracle") p.prec = std::min(41L, b);
    else if (name == "gf1") p.prec = std::min(40L, b);
    else if (name == "modeq" || name == "initvals-alpha" || name == "initvals-beta" || name == "dissection-E")
        p.prec = b;
    else if (name == "recurrence-v" || name == "recurrence-w") p.prec = b;
    else if (name == "matrix-crosscheck") {
        p.imax = std::min(8L, (b - 1) / 5);
        p.prec = b;
    } else if (name == "bounds-alpha" || name == "bounds-beta") p.jmax = b;
    else if (name == "bounds-x") p.mmax = std::min(matrices::kDefaultMaxLevel, 2 + b / 30);
    else if (name == "h-monotone") p.kmax = b;
    else if (name == "delta-classes") p.prec = 5 * b;
    else if (name == "conj1" || name == "conj2") p.max_series = 250 * b;
    else if (name == "cor19") {
        // Exact coefficients are out of reach here; the reduced path is sound for these moduli.
        p.nmax = 0;
        p.fast_mod = true;
        p.max_series = 5000 * b;
    }
    return p;
}

Summary summarize(const std::vector<Report>& reports) {
    Summary s;
    for (const auto& r : reports) {
        if (r.status == Status::Pass) ++s.passed;
        else if (r.status == Status::Fail) ++s.failed;
        else ++s.skipped;
    }
    return s;
}

RunAllResult run_all(const RunAllOptions& opts) {
    if (opts.budget < kMinBudget) throw InvalidParams("budget must be >= " + std::to_string(kMinBudget));
    if (opts.jobs < 1) throw InvalidParams("--jobs must be >= 1");
    const auto& list = entries();
    RunAllResult out;
    out.reports.resize(list.size());
    SeriesCache cache;

    auto run_one = [&](size_t idx) {
        const auto& e = list[idx];
        const auto p = budget_params(e.info.name, opts.budget);
        std::function<Report()> fault;
        if (opts.inject_fault && e.info.name == "modeq") {
            fault = [prec = *p.prec] {
                auto polys = xi_basis::RecurrencePolys::chern_hirschhorn();
                polys.coeffs[0][1] += 1;
                return xi_basis::verify_modular_equation(prec, polys);
            };
        }
        auto r = run_entry(e, p, cache, fault);
        if (fault) r.note("fault injected: perturbed modular-equation coefficient");
        out.reports[idx] = std::move(r);
    };

    const long jobs = std::min<long>(opts.jobs, static_cast<long>(list.size()));
    if (jobs <= 1) {
        for (size_t i = 0; i < list.size(); ++i) run_one(i);
    } else {
        std::atomic<size_t> next{0};
        std::exception_ptr error;
        std::mutex error_mu;
        std::vector<std::thread> pool;
        for (long t = 0; t < jobs; ++t)
            pool.emplace_back([&] {
                for (size_t i = next++; i < list.size(); i = next++) {
                    try {
                        run_one(i);
                    } catch (...) {
                        std::lock_guard lock(error_mu);
                        if (!error) error = std::current_exception();
                    }
                }
            });
        for (auto& th : pool) th.join();
        if (error) std::rethrow_exception(error);
    }
    out.summary = summarize(out.reports);
    return out;
}

}  // namespace qlab::catalog
