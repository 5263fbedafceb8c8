#include <qlab/series.hpp>

#include <algorithm>
#include <string>

namespace qlab::series {

namespace {

const BigInt& zero_value() {
    static const BigInt z(0);
    return z;
}

std::string window_text(const LaurentSeries& f) {
    return "[" + std::to_string(f.offset()) + ", " + std::to_string(f.prec()) + ")";
}

// Drop leading zeros so offset() equals the true valuation. Zero windows are kept as-is.
LaurentSeries normalized(const LaurentSeries& f) {
    auto v = f.valuation();
    if (!v || *v == f.offset()) return f;
    std::vector<BigInt> c(f.coeffs().begin() + (*v - f.offset()), f.coeffs().end());
    return LaurentSeries(*v, std::move(c));
}

}  // namespace

LaurentSeries LaurentSeries::zero(long offset, long prec) {
    return LaurentSeries(offset, std::vector<BigInt>(static_cast<size_t>(std::max(0L, prec - offset))));
}

LaurentSeries LaurentSeries::monomial(long exponent, const BigInt& c, long prec) {
    auto s = zero(exponent, prec);
    if (prec > exponent) s.coeffs_[0] = c;
    return s;
}

LaurentSeries LaurentSeries::polynomial(std::span<const long> coeffs, long prec) {
    auto s = zero(0, prec);
    for (size_t k = 0; k < coeffs.size() && static_cast<long>(k) < prec; ++k) s.coeffs_[k] = coeffs[k];
    return s;
}

const BigInt& LaurentSeries::operator[](long m) const {
    if (m < offset_) return zero_value();
    if (m >= prec())
        throw PrecisionExceeded("coefficient of q^" + std::to_string(m) + " requested outside window " +
                                    window_text(*this),
                                m + 1);
    return coeffs_[static_cast<size_t>(m - offset_)];
}

std::optional<long> LaurentSeries::valuation() const {
    for (size_t k = 0; k < coeffs_.size(); ++k)
        if (sgn(coeffs_[k]) != 0) return offset_ + static_cast<long>(k);
    return std::nullopt;
}

bool LaurentSeries::is_zero_window() const { return !valuation().has_value(); }

LaurentSeries add(const LaurentSeries& f, const LaurentSeries& g) {
    const long lo = std::min(f.offset(), g.offset());
    const long hi = std::min(f.prec(), g.prec());
    std::vector<BigInt> c(static_cast<size_t>(std::max(0L, hi - lo)));
    for (long m = lo; m < hi; ++m) c[m - lo] = f[m] + g[m];
    return LaurentSeries(lo, std::move(c));
}

LaurentSeries sub(const LaurentSeries& f, const LaurentSeries& g) {
    const long lo = std::min(f.offset(), g.offset());
    const long hi = std::min(f.prec(), g.prec());
    std::vector<BigInt> c(static_cast<size_t>(std::max(0L, hi - lo)));
    for (long m = lo; m < hi; ++m) c[m - lo] = f[m] - g[m];
    return LaurentSeries(lo, std::move(c));
}

LaurentSeries mul(const LaurentSeries& f, const LaurentSeries& g) {
    const long n = std::min(f.size(), g.size());
    std::vector<BigInt> c(static_cast<size_t>(n));
    const auto& a = f.coeffs();
    const auto& b = g.coeffs();
    // Sparse-friendly: eta products are mostly zeros.
    std::vector<long> nz_b;
    for (long j = 0; j < n; ++j)
        if (sgn(b[j]) != 0) nz_b.push_back(j);
    for (long i = 0; i < n; ++i) {
        if (sgn(a[i]) == 0) continue;
        mpz_srcptr ai = a[i].get_mpz_t();
        for (long j : nz_b) {
            if (i + j >= n) break;
            mpz_addmul(c[i + j].get_mpz_t(), ai, b[j].get_mpz_t());
        }
    }
    return LaurentSeries(f.offset() + g.offset(), std::move(c));
}

LaurentSeries neg(const LaurentSeries& f) {
    std::vector<BigInt> c(f.coeffs().size());
    for (size_t k = 0; k < c.size(); ++k) c[k] = -f.coeffs()[k];
    return LaurentSeries(f.offset(), std::move(c));
}

LaurentSeries scale(const LaurentSeries& f, const BigInt& s) {
    std::vector<BigInt> c(f.coeffs().size());
    for (size_t k = 0; k < c.size(); ++k) c[k] = f.coeffs()[k] * s;
    return LaurentSeries(f.offset(), std::move(c));
}

LaurentSeries invert(const LaurentSeries& f) {
    if (f.size() == 0) throw EmptyPrecision("cannot invert a series with empty window " + window_text(f));
    const auto v = f.valuation();
    if (!v) throw NonUnitLeadingCoefficient("cannot invert: all coefficients in " + window_text(f) + " vanish");
    const auto h = normalized(f);
    const BigInt& lead = h.coeffs()[0];
    if (abs(lead) != 1)
        throw NonUnitLeadingCoefficient("leading coefficient " + to_decimal(lead) + " at q^" +
                                        std::to_string(*v) + " is not a unit");

    const long n = h.size();
    const auto& hc = h.coeffs();
    std::vector<long> nz;
    for (long k = 1; k < n; ++k)
        if (sgn(hc[k]) != 0) nz.push_back(k);

    // lead * sum_k h_k g_{n-k} = 0 for n > 0, and lead^{-1} == lead.
    std::vector<BigInt> g(static_cast<size_t>(n));
    g[0] = lead;
    BigInt acc;
    for (long m = 1; m < n; ++m) {
        acc = 0;
        for (long k : nz) {
            if (k > m) break;
            mpz_addmul(acc.get_mpz_t(), hc[k].get_mpz_t(), g[m - k].get_mpz_t());
        }
        g[m] = sgn(lead) > 0 ? BigInt(-acc) : acc;
    }
    return LaurentSeries(-*v, std::move(g));
}

LaurentSeries pow(const LaurentSeries& f, long e) {
    if (e < 0) return pow(invert(f), -e);
    const auto v = f.valuation();
    if (e == 0) {
        const long rel = v ? f.prec() - *v : f.size();
        return LaurentSeries::monomial(0, BigInt(1), rel);
    }
    LaurentSeries base = normalized(f);
    LaurentSeries result = base;
    --e;
    while (e > 0) {
        if (e & 1) result = mul(result, base);
        e >>= 1;
        if (e > 0) base = mul(base, base);
    }
    return result;
}

LaurentSeries shift(const LaurentSeries& f, long m) { return LaurentSeries(f.offset() + m, f.coeffs()); }

LaurentSeries substitute_power(const LaurentSeries& f, long k) {
    if (k < 1) throw std::invalid_argument("substitute_power needs k >= 1");
    if (k == 1) return f;
    const long lo = k * f.offset();
    const long hi = std::max(lo, k * (f.prec() - 1) + 1);
    std::vector<BigInt> c(static_cast<size_t>(hi - lo));
    for (long i = 0; i < f.size(); ++i) c[static_cast<size_t>(k * i)] = f.coeffs()[i];
    return LaurentSeries(lo, std::move(c));
}

LaurentSeries extract(const LaurentSeries& f, long k, long r) {
    if (k < 1) throw std::invalid_argument("extract needs k >= 1");
    const long lo = ceil_div(f.offset() - r, k);
    const long hi = std::max(lo, ceil_div(f.prec() - r, k));
    std::vector<BigInt> c(static_cast<size_t>(hi - lo));
    for (long n = lo; n < hi; ++n) c[n - lo] = f[k * n + r];
    return LaurentSeries(lo, std::move(c));
}

LaurentSeries atkin_u5(const LaurentSeries& f) { return extract(f, 5, 0); }

BigInt coefficient(const LaurentSeries& f, long m) {
    if (m < f.offset())
        throw PrecisionExceeded("coefficient of q^" + std::to_string(m) + " requested outside window " +
                                window_text(f));
    return f[m];
}

LaurentSeries truncate(const LaurentSeries& f, long new_prec) {
    if (new_prec > f.prec())
        throw PrecisionExceeded("cannot truncate " + window_text(f) + " to prec " + std::to_string(new_prec),
                                new_prec);
    if (new_prec <= f.offset()) return LaurentSeries(new_prec, {});
    std::vector<BigInt> c(f.coeffs().begin(), f.coeffs().begin() + (new_prec - f.offset()));
    return LaurentSeries(f.offset(), std::move(c));
}

std::optional<long> first_difference(const LaurentSeries& f, const LaurentSeries& g, long upto) {
    if (f.prec() < upto || g.prec() < upto)
        throw PrecisionExceeded("comparison up to q^" + std::to_string(upto) + " exceeds windows " +
                                    window_text(f) + " and " + window_text(g),
                                upto);
    for (long m = std::min(f.offset(), g.offset()); m < upto; ++m)
        if (f[m] != g[m]) return m;
    return std::nullopt;
}

bool equal_upto(const LaurentSeries& f, const LaurentSeries& g, long upto) {
    return !first_difference(f, g, upto).has_value();
}

LaurentSeries reduce_mod(const LaurentSeries& f, const BigInt& modulus) {
    if (sgn(modulus) <= 0) throw std::invalid_argument("modulus must be positive");
    std::vector<BigInt> c(f.coeffs().size());
    for (size_t k = 0; k < c.size(); ++k)
        mpz_fdiv_r(c[k].get_mpz_t(), f.coeffs()[k].get_mpz_t(), modulus.get_mpz_t());
    return LaurentSeries(f.offset(), std::move(c));
}

nlohmann::ordered_json to_json(const LaurentSeries& f) {
    nlohmann::ordered_json j;
    j["offset"] = f.offset();
    j["prec"] = f.prec();
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : f.coeffs()) arr.push_back(to_decimal(c));
    j["coeffs"] = std::move(arr);
    return j;
}

LaurentSeries from_json(const nlohmann::json& j) {
    const long offset = j.at("offset").get<long>();
    const long prec = j.at("prec").get<long>();
    const auto& arr = j.at("coeffs");
    if (static_cast<long>(arr.size()) != prec - offset)
        throw std::invalid_argument("series JSON: coeffs length does not match prec - offset");
    std::vector<BigInt> c;
    c.reserve(arr.size());
    for (const auto& s : arr) c.push_back(from_decimal(s.get<std::string>()));
    return LaurentSeries(offset, std::move(c));
}

}  // namespace qlab::series
