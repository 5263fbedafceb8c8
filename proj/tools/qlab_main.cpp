// Command-line driver: every verification is a named check.

#include <qlab/builders.hpp>
#include <qlab/catalog.hpp>
#include <qlab/errors.hpp>
#include <qlab/matrices.hpp>
#include <qlab/padic.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace {

using namespace qlab;

constexpr int kExitUsage = 2;

struct Output {
    std::string format = "json";
    std::string path;
    bool stable = false;
};

void emit(const Output& out, const std::string& body) {
    if (out.path.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream f(out.path, std::ios::binary);
    if (!f) throw InvalidParams("cannot open " + out.path + " for writing");
    f << body;
}

std::string render(const std::vector<Report>& reports, const Output& out) {
    if (out.format == "csv") return to_csv(reports, out.stable);
    if (out.format == "text") return to_text(reports, out.stable);
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) arr.push_back(to_json(r, out.stable));
    return arr.dump(2) + "\n";
}

void warn_skips(const std::vector<Report>& reports) {
    for (const auto& r : reports)
        if (r.status == Status::Skipped)
            std::cerr << "warning: " << r.check << ": " << (r.notes.empty() ? "skipped" : r.notes.back()) << '\n';
}

matrices::MatrixKind parse_kind(const std::string& s) {
    if (s == "alpha") return matrices::MatrixKind::Alpha;
    if (s == "beta") return matrices::MatrixKind::Beta;
    throw InvalidParams("--kind must be alpha or beta");
}

series::LaurentSeries named_series(const std::string& name, long prec) {
    if (name == "spt") return builders::spt_series(prec);
    if (name == "adsy") return builders::adsy_sum(prec);
    if (name == "gamma") return builders::build_gamma(prec);
    if (name == "delta") return builders::build_delta(prec);
    if (name == "xi") return builders::build_xi(prec);
    if (name == "R") return builders::build_R(prec);
    if (name == "E") return builders::eta_series(1, prec);
    throw InvalidParams("unknown series " + name + " (spt, adsy, gamma, delta, xi, R, E)");
}

std::string series_csv(const series::LaurentSeries& f) {
    std::ostringstream s;
    s << "n,coefficient\n";
    for (long n = f.offset(); n < f.prec(); ++n) s << n << ',' << to_decimal(f[n]) << '\n';
    return s.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qlab: 5-adic verification of smallest-parts overpartition congruences"};
    app.require_subcommand(1);

    Output out;
    catalog::Params params;
    long prec = 0, imax = 0, jmax = 0, mmax = 0, ell = 0, kmax = 0, nmax = 0, max_series = 0;
    std::map<std::string, CLI::Option*> flag;

    auto add_output = [&](CLI::App* sub, bool with_text) {
        std::vector<std::string> formats{"json", "csv"};
        if (with_text) formats.push_back("text");
        sub->add_option("--format", out.format, "output format")->check(CLI::IsMember(formats));
        sub->add_option("--out", out.path, "write to FILE instead of stdout");
        sub->add_flag("--stable", out.stable, "write elapsed_ms as 0 so repeated runs are byte-identical");
    };

    auto* list = app.add_subcommand("list", "print the check catalog");

    auto* run = app.add_subcommand("run", "run one check");
    std::string check;
    run->add_option("check", check, "check name (see `qlab list`)")->required();
    flag["prec"] = run->add_option("--prec", prec, "series precision");
    flag["imax"] = run->add_option("--imax", imax, "largest row index");
    flag["jmax"] = run->add_option("--jmax", jmax, "largest column index");
    flag["mmax"] = run->add_option("--mmax", mmax, "level (theorem) or largest level");
    flag["ell"] = run->add_option("--ell", ell, "congruence exponent parameter");
    flag["kmax"] = run->add_option("--kmax", kmax, "largest k in a congruence family");
    flag["nmax"] = run->add_option("--nmax", nmax, "largest n in a congruence family");
    flag["max-series"] = run->add_option("--max-series", max_series, "cap on the spt series length");
    run->add_flag("--fast-mod", params.fast_mod, "reduce coefficients mod a power of 5");
    add_output(run, true);

    auto* all = app.add_subcommand("all", "run the whole catalog at a precision budget");
    long budget = 60, jobs = 1;
    bool inject_fault = false;
    all->add_option("--prec", budget, "precision budget (>= 30)")->capture_default_str();
    all->add_option("--jobs", jobs, "checks run in parallel")->capture_default_str();
    all->add_flag("--inject-fault", inject_fault, "test hook: perturb the modular equation so a check fails");
    add_output(all, true);

    auto* exp = app.add_subcommand("export", "write matrices, x-vectors, valuation tables or series");
    exp->require_subcommand(1);
    std::string kind = "alpha", series_name = "spt";
    long e_imax = 5, e_jmax = 18, e_mmax = 2, e_prec = 50;
    auto* e_matrix = exp->add_subcommand("matrix", "rows of A or B");
    e_matrix->add_option("--kind", kind, "alpha or beta")->capture_default_str();
    e_matrix->add_option("--imax", e_imax, "rows")->capture_default_str();
    add_output(e_matrix, false);
    auto* e_x = exp->add_subcommand("xvector", "x_m, exact");
    e_x->add_option("--mmax", e_mmax, "level m")->capture_default_str();
    add_output(e_x, false);
    auto* e_val = exp->add_subcommand("valuations", "table of 5-adic orders (CSV)");
    e_val->add_option("--kind", kind, "alpha or beta")->capture_default_str();
    e_val->add_option("--imax", e_imax, "rows")->capture_default_str();
    e_val->add_option("--jmax", e_jmax, "columns")->capture_default_str();
    e_val->add_option("--out", out.path, "write to FILE instead of stdout");
    auto* e_series = exp->add_subcommand("series", "coefficients of a named series");
    e_series->add_option("--name", series_name, "spt, adsy, gamma, delta, xi, R or E")->capture_default_str();
    e_series->add_option("--prec", e_prec, "precision")->capture_default_str();
    add_output(e_series, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (list->parsed()) {
            for (const auto& c : catalog::checks()) {
                std::cout << c.name;
                for (auto p : c.accepts) std::cout << " --" << p;
                std::cout << "\n    " << c.summary << '\n';
            }
            return 0;
        }
        if (run->parsed()) {
            auto set = [&](const char* key, long v, std::optional<long>& dst) {
                if (*flag[key]) dst = v;
            };
            set("prec", prec, params.prec);
            set("imax", imax, params.imax);
            set("jmax", jmax, params.jmax);
            set("mmax", mmax, params.mmax);
            set("ell", ell, params.ell);
            set("kmax", kmax, params.kmax);
            set("nmax", nmax, params.nmax);
            set("max-series", max_series, params.max_series);
            const auto r = catalog::run_check(check, params);
            warn_skips({r});
            emit(out, render({r}, out));
            return r.failed() ? 1 : 0;
        }
        if (all->parsed()) {
            const auto res = catalog::run_all({budget, jobs, inject_fault});
            warn_skips(res.reports);
            emit(out, render(res.reports, out));
            std::cerr << "summary: " << res.summary.passed << " passed, " << res.summary.failed << " failed, "
                      << res.summary.skipped << " skipped\n";
            return res.summary.exit_code();
        }
        if (e_matrix->parsed()) {
            if (e_imax < 1) throw InvalidParams("--imax must be >= 1");
            const auto m = matrices::expand_matrix(parse_kind(kind), e_imax);
            emit(out, out.format == "csv" ? matrices::to_csv(m) : matrices::to_json(m).dump(2) + "\n");
            return 0;
        }
        if (e_x->parsed()) {
            if (e_mmax < 1 || e_mmax > matrices::kDefaultMaxLevel)
                throw InvalidParams("--mmax must be in 1.." + std::to_string(matrices::kDefaultMaxLevel));
            const auto x = matrices::x_vector(e_mmax);
            emit(out, out.format == "csv" ? matrices::to_csv(x) : matrices::to_json(x).dump(2) + "\n");
            return 0;
        }
        if (e_val->parsed()) {
            if (e_imax < 1 || e_jmax < 1) throw InvalidParams("--imax and --jmax must be >= 1");
            emit(out, padic::valuation_table_csv(matrices::expand_matrix(parse_kind(kind), e_imax), e_jmax));
            return 0;
        }
        if (e_series->parsed()) {
            if (e_prec < 2) throw InvalidParams("--prec must be >= 2");
            const auto f = named_series(series_name, e_prec);
            emit(out, out.format == "csv" ? series_csv(f) : series::to_json(f).dump(2) + "\n");
            return 0;
        }
    } catch (const UnknownCheck& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InvalidParams& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
