#pragma once

#include <qlab/bigint.hpp>
#include <qlab/errors.hpp>

#include <json.hpp>

#include <optional>
#include <span>
#include <vector>

namespace qlab::series {

/// Truncated Laurent series over the integers.
///
/// The value asserts that the coefficient of q^m is coeffs()[m - offset()] for
/// offset() <= m < prec(), that every coefficient below offset() is zero, and
/// nothing at or beyond prec(). Leading zeros are allowed, so offset() is a
/// lower bound on the valuation rather than the valuation itself.
class LaurentSeries {
public:
    /// The empty assertion at exponent 0.
    LaurentSeries() = default;

    LaurentSeries(long offset, std::vector<BigInt> coeffs)
        : offset_(offset), coeffs_(std::move(coeffs)) {}

    /// All-zero series on [offset, prec).
    static LaurentSeries zero(long offset, long prec);
    /// c * q^exponent, known on [exponent, prec).
    static LaurentSeries monomial(long exponent, const BigInt& c, long prec);
    /// Polynomial sum_k coeffs[k] q^k, known on [0, prec).
    static LaurentSeries polynomial(std::span<const long> coeffs, long prec);

    long offset() const noexcept { return offset_; }
    long prec() const noexcept { return offset_ + static_cast<long>(coeffs_.size()); }
    long size() const noexcept { return static_cast<long>(coeffs_.size()); }
    const std::vector<BigInt>& coeffs() const noexcept { return coeffs_; }

    /// Coefficient of q^m. Exponents below offset() read as zero; m >= prec() throws.
    const BigInt& operator[](long m) const;

    /// Smallest exponent with a nonzero coefficient, if any inside the window.
    std::optional<long> valuation() const;

    bool is_zero_window() const;

private:
    long offset_ = 0;
    std::vector<BigInt> coeffs_;
};

LaurentSeries add(const LaurentSeries& f, const LaurentSeries& g);
LaurentSeries sub(const LaurentSeries& f, const LaurentSeries& g);
LaurentSeries mul(const LaurentSeries& f, const LaurentSeries& g);
LaurentSeries neg(const LaurentSeries& f);
LaurentSeries scale(const LaurentSeries& f, const BigInt& c);

/// Multiplicative inverse; the coefficient at the true valuation must be +1 or -1.
/// With valuation v the result lives on [-v, f.prec() - 2v).
LaurentSeries invert(const LaurentSeries& f);

/// f^e by repeated squaring; negative exponents go through invert().
LaurentSeries pow(const LaurentSeries& f, long e);

/// q^m * f.
LaurentSeries shift(const LaurentSeries& f, long m);

/// f(q^k) for k >= 1.
LaurentSeries substitute_power(const LaurentSeries& f, long k);

/// sum a(kn + r) q^n. The window is [ceil((offset - r)/k), ceil((prec - r)/k)).
LaurentSeries extract(const LaurentSeries& f, long k, long r);

/// Atkin's U_5: sum a(n) q^n -> sum a(5n) q^n.
LaurentSeries atkin_u5(const LaurentSeries& f);

/// Coefficient of q^m; throws PrecisionExceeded outside [offset, prec).
BigInt coefficient(const LaurentSeries& f, long m);

/// Drops everything at or beyond new_prec; new_prec may not exceed f.prec().
LaurentSeries truncate(const LaurentSeries& f, long new_prec);

/// Exact equality of coefficients below `upto`. Both precisions must reach `upto`.
bool equal_upto(const LaurentSeries& f, const LaurentSeries& g, long upto);

/// First exponent below `upto` where f and g differ.
std::optional<long> first_difference(const LaurentSeries& f, const LaurentSeries& g, long upto);

/// Reduce every coefficient into [0, modulus).
LaurentSeries reduce_mod(const LaurentSeries& f, const BigInt& modulus);

inline LaurentSeries operator+(const LaurentSeries& f, const LaurentSeries& g) { return add(f, g); }
inline LaurentSeries operator-(const LaurentSeries& f, const LaurentSeries& g) { return sub(f, g); }
inline LaurentSeries operator-(const LaurentSeries& f) { return neg(f); }
inline LaurentSeries operator*(const LaurentSeries& f, const LaurentSeries& g) { return mul(f, g); }

/// {"offset": o, "prec": p, "coeffs": ["c0", "c1", ...]} with decimal-string coefficients.
nlohmann::ordered_json to_json(const LaurentSeries& f);
LaurentSeries from_json(const nlohmann::json& j);

}  // namespace qlab::series
