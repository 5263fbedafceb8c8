#include <qlab/padic.hpp>

#include <qlab/builders.hpp>

#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace qlab::padic {

namespace {

long pow5(long e) {
    long p = 1;
    for (long t = 0; t < e; ++t) {
        if (p > std::numeric_limits<long>::max() / 5) throw std::overflow_error("5^" + std::to_string(e) + " overflows");
        p *= 5;
    }
    return p;
}

long checked_mul(long a, long b) {
    long out;
    if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("argument overflows a machine word");
    return out;
}

std::string cell(long i, long j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

constexpr Valuation inf = Valuation::infinity();

}  // namespace

std::string Valuation::to_string() const { return is_infinite() ? "inf" : std::to_string(*value_); }

Valuation nu(const BigInt& n) {
    if (sgn(n) == 0) return Valuation::infinity();
    BigInt rest;
    static const BigInt five(5);
    const auto e = mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), five.get_mpz_t());
    return Valuation(static_cast<long>(e));
}

long bound(BoundKind kind, long a, long b) {
    switch (kind) {
        case BoundKind::AlphaBound:
            return floor_div(5 * b - a - 1, 6);
        case BoundKind::BetaBound:
            return floor_div(5 * b - a - 2, 6);
        case BoundKind::XOdd:
            return 2 * a - 1 + floor_div(5 * b - 10, 6);
        case BoundKind::XEven:
            return 2 * a + floor_div(5 * b - 10, 6) + (b == 3 ? 1 : 0);
        case BoundKind::XFirst:
            return 0;
    }
    throw std::invalid_argument("unknown bound kind");
}

long h_function(long i, long k) { return floor_div(5 * k - 10, 6) + floor_div(5 * i - k - 1, 6); }

const std::array<std::array<Valuation, 18>, 5>& printed_table1() {
    using V = Valuation;
    static const std::array<std::array<Valuation, 18>, 5> table = {{
        {V(0), inf, inf, inf, inf, inf, inf, inf, inf, inf, inf, inf, inf, inf, inf, inf, inf, inf},
        {V(0), V(1), inf, inf, inf, inf, inf, inf, inf, inf, inf, inf, inf, inf, inf, inf, inf, inf},
        {V(0), V(1), V(2), V(3), V(3), V(4), V(5), inf, inf, inf, inf, inf, inf, inf, inf, inf, inf, inf},
        {inf, V(1), V(2), V(2), V(4), V(4), V(5), V(6), V(7), V(7), V(8), V(9), inf, inf, inf, inf, inf, inf},
        {inf, V(1), V(1), V(3), V(4), V(4), V(5), V(7), V(6), V(7), V(9), V(9), V(10), V(13), V(11), V(12), V(13),
         inf},
    }};
    return table;
}

Report verify_table1() {
    Report r;
    r.check = "table1";
    r.precision_used = 25;
    const auto m = matrices::expand_matrix(matrices::MatrixKind::Alpha, 5);
    const auto& table = printed_table1();
    for (long i = 1; i <= 5; ++i)
        for (long j = 1; j <= 18; ++j) {
            const auto got = nu(m.at(i, j));
            const auto want = table[i - 1][j - 1];
            if (got != want) r.fail("nu(alpha" + cell(i, j) + ")", want.to_string(), got.to_string());
        }
    return r;
}

Report verify_matrix_bounds(matrices::MatrixKind kind, long i_max, long j_max, const matrices::BandedMatrix* matrix) {
    Report r;
    r.check = std::string("bounds-") + matrices::to_string(kind);
    r.precision_used = j_max;
    matrices::BandedMatrix generated;
    if (!matrix) {
        generated = matrices::expand_matrix(kind, i_max);
        matrix = &generated;
    }
    if (matrix->row_count() < i_max) throw std::invalid_argument("verify_matrix_bounds: matrix has too few rows");
    const auto bk = kind == matrices::MatrixKind::Alpha ? BoundKind::AlphaBound : BoundKind::BetaBound;

    std::map<long, long> slack_histogram;
    long tight = 0;
    for (long i = 1; i <= i_max; ++i)
        for (long j = 1; j <= j_max; ++j) {
            const auto v = nu(matrix->at(i, j));
            const long b = bound(bk, i, j);
            if (!v.at_least(b)) {
                r.fail("nu(" + std::string(matrices::to_string(kind)) + cell(i, j) + ")", ">= " + std::to_string(b),
                       v.to_string());
                continue;
            }
            if (v.is_infinite()) continue;
            ++slack_histogram[v.value() - b];
            if (v.value() == b) ++tight;
        }
    std::ostringstream hist;
    hist << "slack histogram (finite entries):";
    for (const auto& [s, c] : slack_histogram) hist << ' ' << s << ':' << c;
    r.note(hist.str());
    r.note("entries meeting the bound with equality: " + std::to_string(tight));
    return r;
}

std::vector<long> x_bound_targets(long level, long length) {
    const bool odd = level % 2 == 1;
    const long m = odd ? (level + 1) / 2 : level / 2;
    std::vector<long> t{1};  // nu(x_{level,1}) = 0 only needs one digit
    for (long i = 2; i <= length; ++i) t.push_back(bound(odd ? BoundKind::XOdd : BoundKind::XEven, m, i) + 1);
    return t;
}

std::vector<matrices::XVector> x_vectors_for_bounds(long m_max) {
    if (m_max < 1) throw std::invalid_argument("x_vectors_for_bounds: m must be >= 1");
    if (m_max > matrices::kDefaultMaxLevel)
        throw std::invalid_argument("x_vectors_for_bounds: level " + std::to_string(m_max) + " exceeds the cap of " +
                                    std::to_string(matrices::kDefaultMaxLevel));
    if (m_max <= kExactBoundLevels) return matrices::x_vectors(m_max);
    auto levels = matrices::x_vectors(m_max - 1);
    const auto& top = levels.back();
    levels.push_back(matrices::step_mod(top, x_bound_targets(m_max, 5 * top.support())));
    return levels;
}

Report verify_x_bounds(long m_max) { return verify_x_bounds(x_vectors_for_bounds(m_max)); }

Report verify_x_bounds(const std::vector<matrices::XVector>& levels) {
    Report r;
    r.check = "bounds-x";
    r.precision_used = static_cast<long>(levels.size());
    long min_slack = std::numeric_limits<long>::max();
    // Valuation of entry i, or nullopt when only "at least precision[i-1]" is known.
    auto entry_nu = [](const matrices::XVector& x, long i) -> std::optional<Valuation> {
        const auto v = nu(x.at(i));
        if (x.exact() || !v.is_infinite()) return v;
        return std::nullopt;
    };
    for (const auto& x : levels) {
        const long level = x.level;
        const std::string name = "x_{" + std::to_string(level) + ",";
        const auto first = entry_nu(x, 1);
        if (!first || *first != Valuation(0))
            r.fail("nu(" + name + "1})", "0", first ? first->to_string() : ">= " + std::to_string(x.precision[0]));
        const bool odd = level % 2 == 1;
        const long m = odd ? (level + 1) / 2 : level / 2;
        for (long i = 2; i <= x.support(); ++i) {
            const long b = bound(odd ? BoundKind::XOdd : BoundKind::XEven, m, i);
            const auto v = entry_nu(x, i);
            if (!v) {
                if (x.precision[i - 1] < b)
                    r.fail("nu(" + name + std::to_string(i) + "})", ">= " + std::to_string(b),
                           "undetermined beyond " + std::to_string(x.precision[i - 1]));
                continue;
            }
            if (!v->at_least(b)) {
                r.fail("nu(" + name + std::to_string(i) + "})", ">= " + std::to_string(b), v->to_string());
                continue;
            }
            if (!v->is_infinite()) min_slack = std::min(min_slack, v->value() - b);
        }
        std::string note = "level " + std::to_string(level) + ": support " + std::to_string(x.support());
        if (!x.exact()) note += ", entries known mod 5^(bound + 1)";
        r.note(note);
    }
    if (min_slack != std::numeric_limits<long>::max()) r.note("minimum slack over i >= 2: " + std::to_string(min_slack));
    return r;
}

Report verify_h_monotonicity(long i_max, long k_max) {
    Report r;
    r.check = "h-monotone";
    r.precision_used = k_max;
    for (long i = 1; i <= i_max; ++i) {
        // Closed forms for the starting values.
        const long h4 = 1 + floor_div(5 * i - 5, 6);
        const long h5 = 2 + floor_div(5 * i - 6, 6);
        if (h_function(i, 4) != h4) r.fail("h(" + std::to_string(i) + ",4)", std::to_string(h4), std::to_string(h_function(i, 4)));
        if (h_function(i, 5) != h5) r.fail("h(" + std::to_string(i) + ",5)", std::to_string(h5), std::to_string(h_function(i, 5)));
        for (long k = 4; k <= k_max && k <= 5 * i; ++k) {
            if (h_function(i, k + 2) < h_function(i, k))
                r.fail("h(" + std::to_string(i) + "," + std::to_string(k + 2) + ") vs h(" + std::to_string(i) + "," +
                           std::to_string(k) + ")",
                       ">= " + std::to_string(h_function(i, k)), std::to_string(h_function(i, k + 2)));
        }
    }
    return r;
}

const char* to_string(Family f) {
    switch (f) {
        case Family::Conj1:
            return "conj1";
        case Family::Conj2:
            return "conj2";
        case Family::Cor19:
            return "cor19";
    }
    return "unknown";
}

namespace {

// One statement: spt(lhs) == spt(rhs) (mod 5^e), or spt(lhs) == 0 when rhs is 0.
struct Congruence {
    std::string label;
    long lhs;
    long rhs;
    long exponent;
};

std::vector<Congruence> enumerate(const CongruenceParams& p) {
    std::vector<Congruence> out;
    auto tag = [](long k, long n) { return "k=" + std::to_string(k) + ", n=" + std::to_string(n); };
    switch (p.family) {
        case Family::Conj1:
            for (long k = 0; k <= p.k_max; ++k)
                for (long n = 0; n <= p.n_max; ++n)
                    out.push_back({tag(k, n), checked_mul(pow5(2 * k + p.ell - 1), 10 * n + 5),
                                   checked_mul(pow5(p.ell - 1), 10 * n + 5), p.ell});
            break;
        case Family::Conj2:
            for (long n = 0; n <= p.n_max; ++n) {
                out.push_back({"10n+3, n=" + std::to_string(n), checked_mul(pow5(2 * p.ell), 10 * n + 3), 0, 2 * p.ell});
                out.push_back({"10n+7, n=" + std::to_string(n), checked_mul(pow5(2 * p.ell), 10 * n + 7), 0, 2 * p.ell});
            }
            break;
        case Family::Cor19:
            for (long n = 0; n <= p.n_max; ++n) {
                for (long k = 0; k <= p.k_max; ++k)
                    out.push_back({"internal " + tag(k, n), checked_mul(pow5(2 * k + 5), 10 * n + 5),
                                   checked_mul(pow5(5), 10 * n + 5), 6});
                out.push_back({"10n+3, n=" + std::to_string(n), checked_mul(pow5(6), 10 * n + 3), 0, 6});
                out.push_back({"10n+7, n=" + std::to_string(n), checked_mul(pow5(6), 10 * n + 7), 0, 6});
            }
            break;
    }
    return out;
}

void validate(const CongruenceParams& p) {
    if (p.ell < 1) throw InvalidParams("congruence family: ell must be >= 1");
    if (p.k_max < 0 || p.n_max < 0) throw InvalidParams("congruence family: k_max and n_max must be >= 0");
}

}  // namespace

long congruence_series_length(const CongruenceParams& p) {
    validate(p);
    long top = 1;
    for (const auto& c : enumerate(p)) top = std::max({top, c.lhs, c.rhs});
    return (top - 1) / 2 + 1;
}

long congruence_modulus_exponent(const CongruenceParams& p) {
    validate(p);
    long e = 0;
    for (const auto& c : enumerate(p)) e = std::max(e, c.exponent);
    return e;
}

Report verify_congruence_family(const CongruenceParams& p, const series::LaurentSeries* exact) {
    validate(p);
    Report r;
    r.check = to_string(p.family);
    const auto statements = enumerate(p);
    const long need = congruence_series_length(p);
    r.precision_used = need;
    if (p.max_series >= 0 && need > p.max_series)
        throw PrecisionExceeded("needs spt series length " + std::to_string(need) + ", cap is " +
                                    std::to_string(p.max_series),
                                need);
    const long top_exp = congruence_modulus_exponent(p);

    if (p.fast_mod) {
        const long work_exp = top_exp + 6;
        if (work_exp > 26) throw InvalidParams("fast-mod path supports moduli up to 5^20");
        const auto modulus = static_cast<std::uint64_t>(pow5(work_exp));
        const auto values = builders::spt_series_mod(need, modulus);
        r.note("coefficients reduced mod 5^" + std::to_string(work_exp));
        for (const auto& c : statements) {
            const auto m = static_cast<std::uint64_t>(pow5(c.exponent));
            const std::uint64_t a = values[(c.lhs - 1) / 2] % m;
            const std::uint64_t b = c.rhs ? values[(c.rhs - 1) / 2] % m : 0;
            if (a != b)
                r.fail(c.label + " (mod 5^" + std::to_string(c.exponent) + ")", std::to_string(b), std::to_string(a));
        }
    } else {
        series::LaurentSeries owned;
        if (exact) {
            if (exact->prec() < need)
                throw PrecisionExceeded("shared spt series of length " + std::to_string(exact->prec()) + " is too short",
                                        need);
        } else {
            owned = builders::spt_series(need);
            exact = &owned;
        }
        for (const auto& c : statements) {
            const BigInt m = BigInt(static_cast<unsigned long>(pow5(c.exponent)));
            BigInt a, b;
            mpz_fdiv_r(a.get_mpz_t(), (*exact)[(c.lhs - 1) / 2].get_mpz_t(), m.get_mpz_t());
            if (c.rhs) mpz_fdiv_r(b.get_mpz_t(), (*exact)[(c.rhs - 1) / 2].get_mpz_t(), m.get_mpz_t());
            if (a != b)
                r.fail(c.label + " (mod 5^" + std::to_string(c.exponent) + ")", to_decimal(b), to_decimal(a));
        }
    }
    r.note(std::to_string(statements.size()) + " congruences checked (finite instances)");
    return r;
}

Report verify_delta_classes(long prec) {
    Report r;
    r.check = "delta-classes";
    r.precision_used = prec;
    const auto delta = builders::build_delta(prec);
    for (long t : {1L, 3L}) {
        const auto cls = series::extract(delta, 5, t);
        if (auto v = cls.valuation())
            r.fail("coefficient of q^" + std::to_string(5 * *v + t) + " in delta", "0", to_decimal(cls[*v]));
    }
    return r;
}

std::string valuation_table_csv(const matrices::BandedMatrix& m, long j_max) {
    std::ostringstream out;
    out << "i\\j";
    for (long j = 1; j <= j_max; ++j) out << ',' << j;
    out << '\n';
    for (long i = 1; i <= m.row_count(); ++i) {
        out << i;
        for (long j = 1; j <= j_max; ++j) out << ',' << nu(m.at(i, j)).to_string();
        out << '\n';
    }
    return out.str();
}

}  // namespace qlab::padic
