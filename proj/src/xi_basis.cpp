#include <qlab/xi_basis.hpp>

#include <qlab/builders.hpp>

#include <stdexcept>
#include <string>

namespace qlab::xi_basis {

namespace {

std::vector<BigInt> big_row(std::initializer_list<const char*> values) {
    std::vector<BigInt> row;
    row.reserve(values.size());
    for (const char* v : values) row.emplace_back(v, 10);
    return row;
}

std::string coeff_label(long i, long j) {
    return "row " + std::to_string(i) + ", xi^" + std::to_string(j);
}

Unit input_unit(ImageKind k) { return k == ImageKind::V ? Unit::Gamma : Unit::Delta; }
Unit output_unit(ImageKind k) { return k == ImageKind::V ? Unit::Delta : Unit::Gamma; }

}  // namespace

const char* to_string(Unit u) { return u == Unit::Gamma ? "gamma" : "delta"; }

std::vector<BigInt> XiBasisExpansion::trimmed() const {
    std::vector<BigInt> out(coeffs.begin(), coeffs.begin() + (degree() + 1));
    return out;
}

long XiBasisExpansion::degree() const {
    for (long j = static_cast<long>(coeffs.size()) - 1; j >= 0; --j)
        if (sgn(coeffs[j]) != 0) return j;
    return -1;
}

const RecurrencePolys& RecurrencePolys::chern_hirschhorn() {
    static const RecurrencePolys polys{{{
        {0, 205, 4300, 34000, 120000, 160000},
        {0, 215, 4475, 35000, 122000, 160000},
        {0, 85, 1750, 13525, 46500, 60000},
        {0, 15, 305, 2325, 7875, 10000},
        {0, 1, 20, 150, 500, 625},
    }}};
    return polys;
}

LaurentSeries unit_series(Unit u, long prec) {
    return u == Unit::Gamma ? builders::build_gamma(prec) : builders::build_delta(prec);
}

namespace {

template <typename Coeff>
LaurentSeries evaluate_poly_impl(std::span<const Coeff> c, const LaurentSeries& t, long prec) {
    if (t.offset() < 1) throw std::invalid_argument("evaluate_poly: argument must have positive offset");
    auto acc = LaurentSeries::zero(0, prec);
    auto power = LaurentSeries::monomial(0, BigInt(1), prec);
    for (size_t p = 0; p < c.size(); ++p) {
        if (p > 0) power = series::mul(power, t);
        if (power.offset() >= prec) break;
        const BigInt coeff(c[p]);
        if (sgn(coeff) == 0) continue;
        acc = series::add(acc, series::scale(power, coeff));
    }
    return series::truncate(acc, prec);
}

}  // namespace

LaurentSeries evaluate_poly(std::span<const BigInt> c, const LaurentSeries& t, long prec) {
    return evaluate_poly_impl(c, t, prec);
}

LaurentSeries evaluate_poly(std::span<const long> c, const LaurentSeries& t, long prec) {
    return evaluate_poly_impl(c, t, prec);
}

XiBasisExpansion express_in_xi_basis(const LaurentSeries& f, Unit unit, long max_deg, long prec) {
    if (f.offset() < 0) throw std::invalid_argument("express_in_xi_basis: negative offset");
    if (f.prec() < prec)
        throw PrecisionExceeded("express_in_xi_basis: target known to " + std::to_string(f.prec()) +
                                    ", need " + std::to_string(prec),
                                prec);
    const auto xi = builders::build_xi(std::max(prec, 2L));
    const auto xi_lead = xi.valuation();
    if (!xi_lead || *xi_lead != 1 || xi[1] != 1)
        throw std::logic_error("xi must have valuation 1 with leading coefficient 1");

    auto residual = series::truncate(series::mul(f, series::invert(unit_series(unit, prec))), prec);
    XiBasisExpansion out{unit, std::vector<BigInt>(static_cast<size_t>(prec)), prec};
    auto power = LaurentSeries::monomial(0, BigInt(1), prec);
    for (long j = 0; j < prec; ++j) {
        if (j > 0) power = series::truncate(series::mul(power, xi), prec);
        const BigInt c = residual[j];
        if (sgn(c) == 0) continue;
        if (j > max_deg) throw SupportExceeded(max_deg, j, to_decimal(c));
        out.coeffs[j] = c;
        residual = series::sub(residual, series::scale(power, c));
    }
    return out;
}

LaurentSeries reconstruct(const XiBasisExpansion& e, long prec) {
    const auto xi = builders::build_xi(std::max(prec, 2L));
    return series::truncate(series::mul(unit_series(e.unit, prec), evaluate_poly(std::span<const BigInt>(e.coeffs), xi, prec)),
                            prec);
}

LaurentSeries u_image_series(ImageKind kind, long i, long prec) {
    if (i < 1) throw std::invalid_argument("u_image: i must be >= 1");
    if (prec < 1) throw std::invalid_argument("u_image: prec must be >= 1");
    const long in_prec = u_image_input_prec(prec);
    const auto xi = builders::build_xi(in_prec);
    auto src = series::mul(unit_series(input_unit(kind), in_prec), series::pow(xi, i - 1));
    auto out = series::atkin_u5(series::shift(src, -2));
    if (out.prec() < prec || out.offset() < 0)
        throw PrecisionExceeded("u_image: U landed on [" + std::to_string(out.offset()) + ", " +
                                    std::to_string(out.prec()) + "), need [0, " + std::to_string(prec) + ")",
                                in_prec + 5 * (prec - out.prec()));
    return series::truncate(out, prec);
}

XiBasisExpansion u_image_alpha(long i, long prec) {
    return express_in_xi_basis(u_image_series(ImageKind::V, i, prec), Unit::Delta, 5 * i - 1, prec);
}

XiBasisExpansion u_image_beta(long i, long prec) {
    return express_in_xi_basis(u_image_series(ImageKind::W, i, prec), Unit::Gamma, 5 * i - 1, prec);
}

const std::vector<std::vector<BigInt>>& printed_alpha_initial_values() {
    static const std::vector<std::vector<BigInt>> rows = {
        big_row({"-1"}),
        big_row({"1", "5"}),
        big_row({"1", "170", "4425", "48000", "262000", "720000", "800000"}),
        big_row({"0", "385", "43950", "1723425", "35042500", "431860000", "3465200000", "18636000000",
                 "67040000000", "155520000000", "211200000000", "128000000000"}),
        big_row({"0", "290", "121915", "12433000", "591679375", "16582130000", "306720700000",
                 "3991780000000", "37953252000000", "269282560000000", "1438912000000000",
                 "5782272000000000", "17248640000000000", "37120000000000000", "54579200000000000",
                 "49152000000000000", "20480000000000000"}),
    };
    return rows;
}

const std::vector<std::vector<BigInt>>& printed_beta_initial_values() {
    static const std::vector<std::vector<BigInt>> rows = {
        big_row({"-1"}),
        big_row({"3", "115", "1220", "5200", "8000"}),
        big_row({"1", "626", "36185", "841800", "10558000", "79720000", "376000000", "1091200000",
                 "1792000000", "1280000000"}),
        big_row({"0", "821", "170110", "11019925", "360515500", "7171870000", "95190600000",
                 "886763200000", "5954432000000", "29100480000000", "102944000000000", "257536000000000",
                 "433152000000000", "440320000000000", "204800000000000"}),
        big_row({"0", "460", "322185", "49362850", "3387684625", "134585447500", "3514184550000",
                 "64876279000000", "886105520000000", "9218371600000000", "74395089600000000",
                 "470590086400000000", "2341722368000000000", "9141506560000000000",
                 "27718604800000000000", "64037888000000000000", "109035520000000000000",
                 "129105920000000000000", "95027200000000000000", "32768000000000000000"}),
    };
    return rows;
}

Report verify_modular_equation(long prec, const RecurrencePolys& polys) {
    Report r;
    r.check = "modular-equation";
    r.precision_used = prec;
    const auto xi = builders::build_xi(prec);
    const auto big_x = series::substitute_power(xi, 5);
    if (big_x.valuation() != 5) r.fail("valuation of X = xi(q^5)", "5", std::to_string(big_x.valuation().value_or(-1)));

    auto residual = series::pow(xi, 5);
    for (int k = 1; k <= 5; ++k) {
        const auto pk = evaluate_poly(std::span<const long>(polys.coeffs[k - 1]), big_x, prec);
        // xi^0 is exactly 1; pow would cap it at xi's relative precision.
        const auto term = k == 5 ? pk : series::mul(pk, series::pow(xi, 5 - k));
        residual = series::sub(residual, term);
    }
    residual = series::truncate(residual, prec);
    if (auto v = residual.valuation())
        r.fail("coefficient of q^" + std::to_string(*v), "0", to_decimal(residual[*v]));
    return r;
}

Report verify_initial_values(ImageKind kind, long prec) {
    Report r;
    r.check = kind == ImageKind::V ? "initial-values-alpha" : "initial-values-beta";
    r.precision_used = prec;
    const auto& printed = kind == ImageKind::V ? printed_alpha_initial_values() : printed_beta_initial_values();
    for (long i = 1; i <= 5; ++i) {
        const auto& want = printed[i - 1];
        std::vector<BigInt> got;
        try {
            const auto e = kind == ImageKind::V ? u_image_alpha(i, prec) : u_image_beta(i, prec);
            got = e.trimmed();
        } catch (const SupportExceeded& ex) {
            r.fail(coeff_label(i, ex.index()), "0", ex.value());
            continue;
        }
        if (prec <= static_cast<long>(want.size()))
            r.note("row " + std::to_string(i) + " only certified to xi^" + std::to_string(prec - 1));
        const size_t n = std::max(got.size(), want.size());
        for (size_t j = 0; j < n; ++j) {
            const BigInt g = j < got.size() ? got[j] : BigInt(0);
            const BigInt w = j < want.size() ? want[j] : BigInt(0);
            if (g != w) {
                r.fail(coeff_label(i, static_cast<long>(j)), to_decimal(w), to_decimal(g));
                break;
            }
        }
    }
    return r;
}

Report verify_recurrence(ImageKind kind, long i_max, long prec) {
    if (i_max < 6) throw std::invalid_argument("verify_recurrence: i_max must be >= 6");
    Report r;
    r.check = kind == ImageKind::V ? "recurrence-v" : "recurrence-w";
    r.precision_used = prec;
    const auto& polys = RecurrencePolys::chern_hirschhorn();
    const auto xi = builders::build_xi(std::max(prec, 2L));
    std::vector<LaurentSeries> pk;
    for (int k = 1; k <= 5; ++k) pk.push_back(evaluate_poly(std::span<const long>(polys.coeffs[k - 1]), xi, prec));

    std::vector<LaurentSeries> images{LaurentSeries()};  // 1-based
    for (long i = 1; i <= i_max; ++i) {
        images.push_back(u_image_series(kind, i, prec));
        try {
            express_in_xi_basis(images.back(), output_unit(kind), 5 * i - 1, prec);
        } catch (const SupportExceeded& ex) {
            r.fail(coeff_label(i, ex.index()), "0", ex.value());
        }
    }

    auto combine = [&](const std::vector<LaurentSeries>& src, long i) {
        auto acc = LaurentSeries::zero(0, prec);
        for (int k = 1; k <= 5; ++k) acc = series::add(acc, series::mul(pk[k - 1], src[i - k]));
        return series::truncate(acc, prec);
    };

    for (long i = 6; i <= i_max; ++i) {
        const auto rhs = combine(images, i);
        if (auto d = series::first_difference(images[i], rhs, prec))
            r.fail("image " + std::to_string(i) + ", coefficient of q^" + std::to_string(*d),
                   to_decimal(rhs[*d]), to_decimal(images[i][*d]));
    }

    // Seeded only from the printed rows 1-5.
    const auto& printed = kind == ImageKind::V ? printed_alpha_initial_values() : printed_beta_initial_values();
    std::vector<LaurentSeries> seeded{LaurentSeries()};
    for (const auto& row : printed)
        seeded.push_back(reconstruct(XiBasisExpansion{output_unit(kind), row, prec}, prec));
    const auto rhs6 = combine(seeded, 6);
    if (auto d = series::first_difference(images[6], rhs6, prec))
        r.fail("image 6 from printed seeds, coefficient of q^" + std::to_string(*d), to_decimal(rhs6[*d]),
               to_decimal(images[6][*d]));
    return r;
}

Report verify_dissection_E(long prec, int linear_sign) {
    Report r;
    r.check = "dissection-E";
    r.precision_used = prec;
    const auto e1 = builders::eta_series(1, prec);
    const long r_prec = prec / 5 + 2;
    const auto rr = builders::build_R(r_prec);
    const auto r5 = series::truncate(series::substitute_power(rr, 5), prec);
    const auto inv_r5 = series::truncate(series::substitute_power(series::invert(rr), 5), prec);

    auto bracket = series::add(inv_r5, LaurentSeries::monomial(1, BigInt(linear_sign), prec));
    bracket = series::sub(bracket, series::shift(series::truncate(r5, prec - 2), 2));
    const auto rhs = series::truncate(series::mul(builders::eta_series(25, prec), bracket), prec);
    if (auto d = series::first_difference(e1, rhs, prec))
        r.fail("coefficient of q^" + std::to_string(*d), to_decimal(e1[*d]), to_decimal(rhs[*d]));

    // Residue classes of E(q) mod 5: E(q^5)/R(q), -E(q^5), -E(q^5) R(q), 0, 0.
    const long n = series::extract(e1, 5, 0).prec();
    const auto e5 = builders::eta_series(5, n);
    const auto rn = builders::build_R(n);
    const std::array<LaurentSeries, 5> expected = {
        series::mul(e5, series::invert(rn)), series::neg(e5), series::neg(series::mul(e5, rn)),
        LaurentSeries::zero(0, n), LaurentSeries::zero(0, n)};
    for (long t = 0; t < 5; ++t) {
        const auto cls = series::extract(e1, 5, t);
        const long upto = std::min(cls.prec(), expected[t].prec());
        if (auto d = series::first_difference(cls, expected[t], upto))
            r.fail("class " + std::to_string(t) + " mod 5, coefficient of q^" + std::to_string(*d),
                   to_decimal(expected[t][*d]), to_decimal(cls[*d]));
    }
    return r;
}

}  // namespace qlab::xi_basis
