#include <qlab/matrices.hpp>

#include <qlab/builders.hpp>
#include <qlab/xi_basis.hpp>

#include <limits>
#include <sstream>
#include <stdexcept>

namespace qlab::matrices {

namespace {

PolyY poly(std::initializer_list<long> c) {
    PolyY p;
    for (long v : c) p.emplace_back(v);
    return p;
}

BivariateRational make_gf(std::vector<PolyY> numerator) {
    BivariateRational gf;
    gf.numerator = std::move(numerator);
    gf.denominator.push_back(poly({1}));
    for (const auto& pk : xi_basis::RecurrencePolys::chern_hirschhorn().coeffs) {
        PolyY d;
        for (long c : pk) d.emplace_back(-c);
        gf.denominator.push_back(std::move(d));
    }
    return gf;
}

long degree(const PolyY& p) {
    for (long k = static_cast<long>(p.size()) - 1; k >= 0; --k)
        if (sgn(p[k]) != 0) return k;
    return -1;
}

// acc += c * a
void add_product(PolyY& acc, const PolyY& c, const PolyY& a) {
    const long dc = degree(c), da = degree(a);
    if (dc < 0 || da < 0) return;
    if (static_cast<long>(acc.size()) < dc + da + 1) acc.resize(static_cast<size_t>(dc + da + 1));
    for (long s = 0; s <= dc; ++s) {
        if (sgn(c[s]) == 0) continue;
        mpz_srcptr cs = c[s].get_mpz_t();
        const bool small = mpz_fits_slong_p(cs);
        const long cv = small ? mpz_get_si(cs) : 0;
        for (long t = 0; t <= da; ++t) {
            if (small) {
                if (cv > 0)
                    mpz_addmul_ui(acc[s + t].get_mpz_t(), a[t].get_mpz_t(), static_cast<unsigned long>(cv));
                else
                    mpz_submul_ui(acc[s + t].get_mpz_t(), a[t].get_mpz_t(), static_cast<unsigned long>(-cv));
            } else {
                mpz_addmul(acc[s + t].get_mpz_t(), cs, a[t].get_mpz_t());
            }
        }
    }
}

std::vector<BigInt> band_row(const PolyY& row, long i) {
    const long width = 5 * i;
    if (!row.empty() && sgn(row[0]) != 0)
        throw std::logic_error("row " + std::to_string(i) + " has a y^0 term");
    if (degree(row) > width)
        throw std::logic_error("row " + std::to_string(i) + " has support at y^" + std::to_string(degree(row)) +
                               " beyond 5i = " + std::to_string(width));
    std::vector<BigInt> out(static_cast<size_t>(width));
    for (long j = 1; j <= width && j < static_cast<long>(row.size()); ++j) out[j - 1] = row[j];
    return out;
}

const BigInt& zero_value() {
    static const BigInt z(0);
    return z;
}

}  // namespace

const char* to_string(MatrixKind k) { return k == MatrixKind::Alpha ? "alpha" : "beta"; }

const BivariateRational& BivariateRational::for_kind(MatrixKind k) {
    static const BivariateRational alpha = make_gf({
        poly({}),
        poly({0, -1}),
        poly({0, 1, 210, 4300, 34000, 120000, 160000}),
        poly({0, 1, 180, 3575, 27500, 94000, 120000}),
        poly({0, 0, 50, 1000, 7450, 24500, 30000}),
        poly({0, 0, 5, 95, 675, 2125, 2500}),
    });
    static const BivariateRational beta = make_gf({
        poly({}),
        poly({0, -1}),
        poly({0, 3, 320, 5520, 39200, 128000, 160000}),
        poly({0, 1, 226, 4185, 30200, 98000, 120000}),
        poly({0, 0, 56, 1080, 7800, 25000, 30000}),
        poly({0, 0, 5, 95, 675, 2125, 2500}),
    });
    return k == MatrixKind::Alpha ? alpha : beta;
}

const BigInt& BandedMatrix::at(long i, long j) const {
    if (i < 1 || i > row_count()) throw std::out_of_range("matrix row " + std::to_string(i) + " not computed");
    const auto& row = rows[i - 1];
    if (j < 1 || j > static_cast<long>(row.size())) return zero_value();
    return row[j - 1];
}

const BigInt& XVector::at(long i) const {
    if (i < 1 || i > support()) return zero_value();
    return entries[i - 1];
}

RowGenerator::RowGenerator(const BivariateRational& gf) : gf_(gf) {
    if (gf_.denominator.empty() || degree(gf_.denominator[0]) != 0 || gf_.denominator[0][0] != 1)
        throw std::invalid_argument("denominator must have constant term 1 in x");
}

PolyY RowGenerator::next() {
    ++index_;
    PolyY row = index_ < static_cast<long>(gf_.numerator.size()) ? gf_.numerator[index_] : PolyY{};
    for (size_t k = 1; k < gf_.denominator.size() && k <= history_.size(); ++k) {
        PolyY neg_d(gf_.denominator[k].size());
        for (size_t t = 0; t < neg_d.size(); ++t) neg_d[t] = -gf_.denominator[k][t];
        add_product(row, neg_d, history_[k - 1]);
    }
    row.resize(static_cast<size_t>(std::max(0L, degree(row) + 1)));
    history_.insert(history_.begin(), row);
    if (history_.size() >= gf_.denominator.size()) history_.pop_back();
    return row;
}

BandedMatrix expand_matrix(MatrixKind kind, long i_max) {
    return expand_matrix(BivariateRational::for_kind(kind), kind, i_max);
}

BandedMatrix expand_matrix(const BivariateRational& gf, MatrixKind kind, long i_max) {
    if (i_max < 1) throw std::invalid_argument("expand_matrix: i_max must be >= 1");
    BandedMatrix m{kind, {}};
    RowGenerator gen(gf);
    for (long i = 1; i <= i_max; ++i) m.rows.push_back(band_row(gen.next(), i));
    return m;
}

BandedMatrix expand_matrix_from_seeds(MatrixKind kind, long i_max) {
    if (i_max < 1) throw std::invalid_argument("expand_matrix_from_seeds: i_max must be >= 1");
    const auto& seeds = kind == MatrixKind::Alpha ? xi_basis::printed_alpha_initial_values()
                                                  : xi_basis::printed_beta_initial_values();
    const auto& polys = xi_basis::RecurrencePolys::chern_hirschhorn();
    std::vector<PolyY> rows;
    BandedMatrix m{kind, {}};
    for (long i = 1; i <= i_max; ++i) {
        PolyY row;
        if (i <= 5) {
            // alpha_{i,j} is the coefficient of xi^{j-1}.
            row.emplace_back(0);
            for (const auto& c : seeds[i - 1]) row.push_back(c);
        } else {
            for (int k = 1; k <= 5; ++k) {
                PolyY pk(polys.coeffs[k - 1].begin(), polys.coeffs[k - 1].end());
                add_product(row, pk, rows[i - k - 1]);
            }
        }
        row.resize(static_cast<size_t>(std::max(0L, degree(row) + 1)));
        m.rows.push_back(band_row(row, i));
        rows.push_back(std::move(row));
    }
    return m;
}

Report verify_matrix_generation(MatrixKind kind, long i_max) {
    Report r;
    r.check = std::string("matrix-") + to_string(kind);
    r.precision_used = 5 * i_max;
    BandedMatrix gf_rows, seeded;
    try {
        gf_rows = expand_matrix(kind, i_max);
        seeded = expand_matrix_from_seeds(kind, i_max);
    } catch (const std::logic_error& e) {
        r.fail("band structure", "support within columns 1..5i", e.what());
        return r;
    }
    if (gf_rows.at(1, 1) != -1) r.fail("entry (1,1)", "-1", to_decimal(gf_rows.at(1, 1)));
    for (long j = 2; j <= 5; ++j)
        if (sgn(gf_rows.at(1, j)) != 0) r.fail("entry (1," + std::to_string(j) + ")", "0", to_decimal(gf_rows.at(1, j)));
    for (long i = 1; i <= i_max; ++i) {
        for (long j = 1; j <= 5 * i; ++j) {
            if (gf_rows.at(i, j) != seeded.at(i, j)) {
                r.fail("entry (" + std::to_string(i) + "," + std::to_string(j) + ")", to_decimal(seeded.at(i, j)),
                       to_decimal(gf_rows.at(i, j)));
                return r;
            }
        }
    }
    // Report how tight the 5i band is.
    long tightest = -5 * i_max;
    for (long i = 1; i <= i_max; ++i) {
        long last = 0;
        for (long j = 1; j <= 5 * i; ++j)
            if (sgn(gf_rows.at(i, j)) != 0) last = j;
        if (i >= 3) tightest = std::max(tightest, last - 5 * i);
    }
    r.note("for 3 <= i <= " + std::to_string(i_max) + " the last nonzero column is at most 5i" +
           (tightest < 0 ? std::to_string(tightest) : "+" + std::to_string(tightest)));
    return r;
}

Report cross_check_matrix(MatrixKind kind, long i_max, long prec) {
    return cross_check_matrix(BivariateRational::for_kind(kind), kind, i_max, prec);
}

Report cross_check_matrix(const BivariateRational& gf, MatrixKind kind, long i_max, long prec) {
    Report r;
    r.check = "matrix-crosscheck";
    r.precision_used = prec;
    if (prec < 5 * i_max + 1)
        throw PrecisionExceeded("cross_check_matrix: prec " + std::to_string(prec) + " cannot certify row " +
                                    std::to_string(i_max),
                                5 * i_max + 1);
    BandedMatrix m;
    try {
        m = expand_matrix(gf, kind, i_max);
    } catch (const std::logic_error& e) {
        r.fail("band structure", "support within columns 1..5i", e.what());
        return r;
    }
    const auto img_kind = kind == MatrixKind::Alpha ? xi_basis::ImageKind::V : xi_basis::ImageKind::W;
    const auto out_unit = kind == MatrixKind::Alpha ? xi_basis::Unit::Delta : xi_basis::Unit::Gamma;
    for (long i = 1; i <= i_max; ++i) {
        xi_basis::XiBasisExpansion e;
        try {
            e = xi_basis::express_in_xi_basis(xi_basis::u_image_series(img_kind, i, prec), out_unit, 5 * i - 1, prec);
        } catch (const SupportExceeded& ex) {
            r.fail("row " + std::to_string(i) + ", xi^" + std::to_string(ex.index()), "0", ex.value());
            continue;
        }
        for (long j = 1; j <= 5 * i; ++j) {
            const BigInt& got = m.at(i, j);
            const BigInt& want = e.coeffs[j - 1];
            if (got != want) {
                r.fail("(" + std::to_string(i) + "," + std::to_string(j) + ")", to_decimal(want), to_decimal(got));
                break;
            }
        }
    }
    return r;
}

XVector x_first() {
    return XVector{1, {BigInt(18), BigInt(720), BigInt(7625), BigInt(32500), BigInt(50000)}, {}};
}

const std::vector<BigInt>& printed_x_second() {
    static const std::vector<BigInt> v = [] {
        std::vector<BigInt> out;
        for (const char* s : {"8327", "28312350", "7557865625", "678027312500", "30724847750000", "843147440000000",
                              "15448660100000000", "200194670000000000", "1899841400000000000",
                              "13469182400000000000", "71952464000000000000", "289117760000000000000",
                              "862432000000000000000", "1856000000000000000000", "2728960000000000000000",
                              "2457600000000000000000", "1024000000000000000000"})
            out.emplace_back(s, 10);
        return out;
    }();
    return v;
}

namespace {

MatrixKind kind_for_level(long level) { return level % 2 == 1 ? MatrixKind::Alpha : MatrixKind::Beta; }

XVector trimmed_vector(long level, std::vector<BigInt> out) {
    while (!out.empty() && sgn(out.back()) == 0) out.pop_back();
    return XVector{level, std::move(out), {}};
}

}  // namespace

XVector step_direct(const XVector& x) {
    RowGenerator gen(BivariateRational::for_kind(kind_for_level(x.level)));
    std::vector<BigInt> out(static_cast<size_t>(5 * x.support()));
    for (long i = 1; i <= x.support(); ++i) {
        const PolyY row = gen.next();
        const BigInt& xi = x.entries[i - 1];
        if (sgn(xi) == 0) continue;
        mpz_srcptr xp = xi.get_mpz_t();
        for (long j = 1; j < static_cast<long>(row.size()); ++j)
            if (sgn(row[j]) != 0) mpz_addmul(out[j - 1].get_mpz_t(), xp, row[j].get_mpz_t());
    }
    return trimmed_vector(x.level + 1, std::move(out));
}

XVector step(const XVector& x) {
    // sum_i x_i row_i = sum_i N_i b_i with b_i = x_i - sum_k D_k b_{i+k}, run from the top down.
    const auto& gf = BivariateRational::for_kind(kind_for_level(x.level));
    const long depth = static_cast<long>(gf.denominator.size()) - 1;
    std::vector<PolyY> neg_d(gf.denominator.size());
    for (size_t k = 1; k < gf.denominator.size(); ++k)
        for (const auto& c : gf.denominator[k]) neg_d[k].push_back(-c);

    const long n = x.support();
    std::vector<PolyY> ahead(static_cast<size_t>(depth));  // ahead[k-1] = b_{i+k}
    PolyY result;
    for (long i = n; i >= 1; --i) {
        PolyY b{x.entries[i - 1]};
        for (long k = 1; k <= depth && i + k <= n; ++k) add_product(b, neg_d[k], ahead[k - 1]);
        if (i < static_cast<long>(gf.numerator.size())) add_product(result, gf.numerator[i], b);
        ahead.pop_back();
        ahead.insert(ahead.begin(), std::move(b));
    }
    if (!result.empty() && sgn(result[0]) != 0) throw std::logic_error("x-vector product produced a y^0 term");
    std::vector<BigInt> out;
    for (size_t j = 1; j < result.size(); ++j) out.push_back(std::move(result[j]));
    return trimmed_vector(x.level + 1, std::move(out));
}

namespace {

long nu5(unsigned long c) {
    long v = 0;
    while (c != 0 && c % 5 == 0) {
        c /= 5;
        ++v;
    }
    return v;
}

// A coefficient known mod 5^R, stored as 5^low * unit mod 5^{R - low}.
struct Digit {
    long low = kEmpty;
    BigInt unit;
    static constexpr long kEmpty = std::numeric_limits<long>::max();
    bool empty() const { return low == kEmpty; }
};

// c = sign * 5^v * rest with |rest| small.
struct SmallCoeff {
    long t = 0;
    bool negative = false;
    long v = 0;
    unsigned long rest = 0;
};

std::vector<SmallCoeff> split_coeffs(const PolyY& p, bool negate) {
    std::vector<SmallCoeff> out;
    for (size_t t = 0; t < p.size(); ++t) {
        if (sgn(p[t]) == 0) continue;
        if (!p[t].fits_slong_p()) throw std::logic_error("step_mod: coefficient too large");
        long c = p[t].get_si();
        if (negate) c = -c;
        const auto mag = static_cast<unsigned long>(c < 0 ? -c : c);
        const long v = nu5(mag);
        unsigned long rest = mag;
        for (long e = 0; e < v; ++e) rest /= 5;
        out.push_back({static_cast<long>(t), c < 0, v, rest});
    }
    return out;
}

}  // namespace

XVector step_mod(const XVector& x, const std::vector<long>& targets) {
    if (!x.exact()) throw std::invalid_argument("step_mod: input must be exact");
    if (targets.empty()) throw std::invalid_argument("step_mod: no target precisions");
    const auto& gf = BivariateRational::for_kind(kind_for_level(x.level));
    const long depth = static_cast<long>(gf.denominator.size()) - 1;
    const long n = x.support();
    const long width = 5 * n;  // output entries j = 1..width
    auto target = [&](long j) { return targets[static_cast<size_t>(std::min<long>(j, targets.size()) - 1)]; };

    std::vector<std::vector<SmallCoeff>> rec(static_cast<size_t>(depth + 1));  // -D_d
    for (long d = 1; d <= depth; ++d) rec[d] = split_coeffs(gf.denominator[d], true);
    std::vector<std::vector<SmallCoeff>> num(gf.numerator.size());
    for (size_t i = 1; i < gf.numerator.size(); ++i) num[i] = split_coeffs(gf.numerator[i], false);
    const long num_rows = static_cast<long>(gf.numerator.size()) - 1;

    // need[i][j]: precision to which b_i[j] must be known, from its consumers.
    constexpr long kNone = std::numeric_limits<long>::min() / 4;
    auto row_len = [&](long i) { return 5 * (n - i) + 1; };
    std::vector<std::vector<int>> need(static_cast<size_t>(n + 1));
    for (long i = 1; i <= n; ++i) {
        auto& row = need[i];
        row.assign(static_cast<size_t>(row_len(i)), static_cast<int>(kNone));
        for (long j = 0; j < row_len(i); ++j) {
            long r = kNone;
            if (i <= num_rows)
                for (const auto& c : num[i])
                    if (j + c.t >= 1 && j + c.t <= width) r = std::max(r, target(j + c.t) - c.v);
            for (long d = 1; d <= depth && i - d >= 1; ++d)
                for (const auto& c : rec[d]) r = std::max(r, static_cast<long>(need[i - d][j + c.t]) - c.v);
            row[j] = static_cast<int>(std::max(r, kNone));
        }
    }

    std::vector<BigInt> pow5{BigInt(1)};
    auto power = [&](long e) -> const BigInt& {
        while (static_cast<long>(pow5.size()) <= e) pow5.push_back(pow5.back() * 5);
        return pow5[e];
    };

    std::vector<std::vector<Digit>> ahead(static_cast<size_t>(depth));  // ahead[d-1] = b_{i+d}
    std::vector<Digit> bottom[6];                                          // b_1..b_5 for the output
    BigInt acc, term;
    for (long i = n; i >= 1; --i) {
        const auto& req = need[i];
        std::vector<Digit> b(static_cast<size_t>(row_len(i)));
        for (long j = 0; j < row_len(i); ++j) {
            const long r = req[j];
            if (r <= 0) continue;
            // Lowest 5-order among the terms that matter mod 5^r.
            long low = Digit::kEmpty;
            BigInt xu;
            long xv = Digit::kEmpty;
            if (j == 0 && sgn(x.entries[i - 1]) != 0) {
                xv = static_cast<long>(mpz_remove(xu.get_mpz_t(), x.entries[i - 1].get_mpz_t(), power(1).get_mpz_t()));
                if (xv < r) low = xv;
            }
            for (long d = 1; d <= depth && i + d <= n; ++d) {
                const auto& src = ahead[d - 1];
                for (const auto& c : rec[d]) {
                    const long js = j - c.t;
                    if (js < 0 || js >= static_cast<long>(src.size()) || src[js].empty()) continue;
                    const long tv = src[js].low + c.v;
                    if (tv < r) low = std::min(low, tv);
                }
            }
            if (low == Digit::kEmpty) continue;
            acc = 0;
            if (xv < r) acc = xu * power(xv - low);
            for (long d = 1; d <= depth && i + d <= n; ++d) {
                const auto& src = ahead[d - 1];
                for (const auto& c : rec[d]) {
                    const long js = j - c.t;
                    if (js < 0 || js >= static_cast<long>(src.size()) || src[js].empty()) continue;
                    const long tv = src[js].low + c.v;
                    if (tv >= r) continue;
                    const long e = tv - low;
                    mpz_srcptr u = src[js].unit.get_mpz_t();
                    if (e == 0) {
                        if (c.negative)
                            mpz_submul_ui(acc.get_mpz_t(), u, c.rest);
                        else
                            mpz_addmul_ui(acc.get_mpz_t(), u, c.rest);
                    } else {
                        mpz_mul_ui(term.get_mpz_t(), power(e).get_mpz_t(), c.rest);
                        if (c.negative)
                            mpz_submul(acc.get_mpz_t(), u, term.get_mpz_t());
                        else
                            mpz_addmul(acc.get_mpz_t(), u, term.get_mpz_t());
                    }
                }
            }
            mpz_fdiv_r(acc.get_mpz_t(), acc.get_mpz_t(), power(r - low).get_mpz_t());
            if (sgn(acc) == 0) continue;
            Digit& out = b[j];
            const long extra = static_cast<long>(mpz_remove(out.unit.get_mpz_t(), acc.get_mpz_t(), power(1).get_mpz_t()));
            out.low = low + extra;
        }
        if (i <= 5) bottom[i] = b;
        ahead.pop_back();
        ahead.insert(ahead.begin(), std::move(b));
    }

    XVector out{x.level + 1, std::vector<BigInt>(static_cast<size_t>(width)), std::vector<long>(static_cast<size_t>(width))};
    for (long j = 1; j <= width; ++j) {
        const long t = target(j);
        out.precision[j - 1] = t;
        acc = 0;
        for (long i = 1; i <= std::min(num_rows, n); ++i) {
            for (const auto& c : num[i]) {
                const long js = j - c.t;
                if (js < 0 || js >= static_cast<long>(bottom[i].size()) || bottom[i][js].empty()) continue;
                const long tv = bottom[i][js].low + c.v;
                if (tv >= t) continue;
                mpz_mul_ui(term.get_mpz_t(), power(tv).get_mpz_t(), c.rest);
                if (c.negative)
                    mpz_submul(acc.get_mpz_t(), bottom[i][js].unit.get_mpz_t(), term.get_mpz_t());
                else
                    mpz_addmul(acc.get_mpz_t(), bottom[i][js].unit.get_mpz_t(), term.get_mpz_t());
            }
        }
        if (t > 0) mpz_fdiv_r(out.entries[j - 1].get_mpz_t(), acc.get_mpz_t(), power(t).get_mpz_t());
    }
    return out;
}

std::vector<XVector> x_vectors(long m_max, bool allow_large) {
    if (m_max < 1) throw std::invalid_argument("x_vectors: m must be >= 1");
    if (m_max > kDefaultMaxLevel && !allow_large)
        throw std::invalid_argument("x_vectors: level " + std::to_string(m_max) + " exceeds the default cap of " +
                                    std::to_string(kDefaultMaxLevel));
    std::vector<XVector> out{x_first()};
    while (static_cast<long>(out.size()) < m_max) out.push_back(step(out.back()));
    return out;
}

XVector x_vector(long m, bool allow_large) { return x_vectors(m, allow_large).back(); }

long theorem_series_length(long m, long prec) {
    long p5 = 1;
    for (long t = 0; t < m; ++t) p5 *= 5;
    return p5 * (prec - 1) + (p5 - 1) / 2 + 1;
}

Report verify_theorem_gf(long m, long prec, const series::LaurentSeries* spt) {
    if (m < 1) throw std::invalid_argument("verify_theorem_gf: m must be >= 1");
    if (prec < 1) throw std::invalid_argument("verify_theorem_gf: prec must be >= 1");
    Report r;
    r.check = "theorem";
    r.precision_used = prec;
    const long need = theorem_series_length(m, prec);
    if (spt && spt->prec() < need)
        throw PrecisionExceeded("spt series of length " + std::to_string(spt->prec()) + " is too short", need);
    series::LaurentSeries level = spt ? *spt : builders::spt_series(need);
    for (long t = 0; t < m; ++t) level = series::extract(level, 5, 2);
    level = series::truncate(level, prec);
    r.note("spt series length " + std::to_string(need));

    const auto x = x_vector(m, true);
    const auto unit = m % 2 == 1 ? xi_basis::Unit::Gamma : xi_basis::Unit::Delta;
    const auto xi = builders::build_xi(std::max(prec, 2L));
    const long used = std::min(prec, x.support());
    std::span<const BigInt> coeffs(x.entries.data(), static_cast<size_t>(used));
    const auto rhs =
        series::truncate(series::mul(xi_basis::unit_series(unit, prec), xi_basis::evaluate_poly(coeffs, xi, prec)), prec);
    if (auto d = series::first_difference(level, rhs, prec))
        r.fail("coefficient of q^" + std::to_string(*d), to_decimal(rhs[*d]), to_decimal(level[*d]));

    // Recover x_m directly from the extracted series.
    const auto e = xi_basis::express_in_xi_basis(level, unit, prec, prec);
    for (long i = 1; i <= prec; ++i) {
        if (e.coeffs[i - 1] != x.at(i)) {
            r.fail("x_{" + std::to_string(m) + "," + std::to_string(i) + "} recovered from spt", to_decimal(x.at(i)),
                   to_decimal(e.coeffs[i - 1]));
            break;
        }
    }
    if (prec < x.support())
        r.note("x_" + std::to_string(m) + " has support " + std::to_string(x.support()) + "; first " +
               std::to_string(prec) + " entries are pinned by this precision");
    return r;
}

Report verify_x_second() {
    Report r;
    r.check = "x-second";
    const auto x2 = step(x_first());
    const auto& want = printed_x_second();
    r.precision_used = static_cast<long>(want.size());
    if (x2.support() != static_cast<long>(want.size()))
        r.fail("support of x_2", std::to_string(want.size()), std::to_string(x2.support()));
    for (long i = 1; i <= static_cast<long>(want.size()); ++i)
        if (x2.at(i) != want[i - 1]) r.fail("x_{2," + std::to_string(i) + "}", to_decimal(want[i - 1]), to_decimal(x2.at(i)));
    return r;
}

Report verify_x_routes(long m_max) {
    if (m_max < 2) throw std::invalid_argument("verify_x_routes: m_max must be >= 2");
    Report r;
    r.check = "x-routes";
    r.precision_used = m_max;
    const auto levels = x_vectors(m_max);
    for (long m = 1; m < m_max; ++m) {
        const auto& from = levels[m - 1];
        const auto& to = levels[m];
        const auto direct = step_direct(from);
        const std::string lvl = std::to_string(m + 1);
        if (direct.support() != to.support())
            r.fail("support of x_" + lvl + " (row-by-row)", std::to_string(to.support()), std::to_string(direct.support()));
        for (long i = 1; i <= std::max(direct.support(), to.support()); ++i)
            if (direct.at(i) != to.at(i))
                r.fail("x_{" + lvl + "," + std::to_string(i) + "} (row-by-row)", to_decimal(to.at(i)),
                       to_decimal(direct.at(i)));

        // Reduced route at a uniform and at a growing precision.
        for (const auto& targets : {std::vector<long>{40}, std::vector<long>{1, 2, 3, 5, 8, 13, 21}}) {
            const auto reduced = step_mod(from, targets);
            for (long i = 1; i <= reduced.support(); ++i) {
                BigInt want, mod;
                mpz_ui_pow_ui(mod.get_mpz_t(), 5, static_cast<unsigned long>(reduced.precision[i - 1]));
                mpz_fdiv_r(want.get_mpz_t(), to.at(i).get_mpz_t(), mod.get_mpz_t());
                if (want != reduced.at(i)) {
                    r.fail("x_{" + lvl + "," + std::to_string(i) + "} mod 5^" +
                               std::to_string(reduced.precision[i - 1]),
                           to_decimal(want), to_decimal(reduced.at(i)));
                    break;
                }
            }
        }
        r.note("x_" + lvl + ": support " + std::to_string(to.support()));
    }
    return r;
}

nlohmann::ordered_json to_json(const BandedMatrix& m) {
    nlohmann::ordered_json j;
    j["kind"] = to_string(m.kind);
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : m.rows) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& v : row) arr.push_back(to_decimal(v));
        rows.push_back(std::move(arr));
    }
    j["rows"] = std::move(rows);
    return j;
}

std::string to_csv(const BandedMatrix& m) {
    std::ostringstream out;
    const long width = 5 * m.row_count();
    out << "i\\j";
    for (long j = 1; j <= width; ++j) out << ',' << j;
    out << '\n';
    for (long i = 1; i <= m.row_count(); ++i) {
        out << i;
        for (long j = 1; j <= width; ++j) out << ',' << to_decimal(m.at(i, j));
        out << '\n';
    }
    return out.str();
}

nlohmann::ordered_json to_json(const XVector& x) {
    nlohmann::ordered_json j;
    j["level"] = x.level;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& v : x.entries) arr.push_back(to_decimal(v));
    j["entries"] = std::move(arr);
    if (!x.exact()) {
        auto prec = nlohmann::ordered_json::array();
        for (long e : x.precision) prec.push_back(e);
        j["precision"] = std::move(prec);
    }
    return j;
}

std::string to_csv(const XVector& x) {
    std::ostringstream out;
    out << (x.exact() ? "i,x\n" : "i,x,precision\n");
    for (long i = 1; i <= x.support(); ++i) {
        out << i << ',' << to_decimal(x.at(i));
        if (!x.exact()) out << ',' << x.precision[i - 1];
        out << '\n';
    }
    return out.str();
}

}  // namespace qlab::matrices
