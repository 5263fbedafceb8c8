#pragma once

#include <qlab/matrices.hpp>
#include <qlab/report.hpp>
#include <qlab/series.hpp>

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace qlab::padic {

/// 5-adic order, with nu(0) = infinity.
class Valuation {
public:
    constexpr Valuation() = default;  // infinity
    constexpr explicit Valuation(long v) : value_(v) {}

    static constexpr Valuation infinity() { return Valuation(); }

    constexpr bool is_infinite() const { return !value_.has_value(); }
    /// Finite value; throws std::bad_optional_access for infinity.
    long value() const { return value_.value(); }

    /// True when the valuation is at least `b` (infinity satisfies every bound).
    constexpr bool at_least(long b) const { return is_infinite() || *value_ >= b; }

    friend constexpr Valuation operator+(Valuation a, Valuation b) {
        if (a.is_infinite() || b.is_infinite()) return infinity();
        return Valuation(*a.value_ + *b.value_);
    }
    friend constexpr bool operator==(Valuation a, Valuation b) = default;
    friend constexpr std::strong_ordering operator<=>(Valuation a, Valuation b) {
        if (a.is_infinite() || b.is_infinite()) return a.is_infinite() <=> b.is_infinite();
        return *a.value_ <=> *b.value_;
    }

    /// Decimal value, or "inf".
    std::string to_string() const;

private:
    std::optional<long> value_;
};

Valuation nu(const BigInt& n);

enum class BoundKind { AlphaBound, BetaBound, XOdd, XEven, XFirst };

/// Lower bounds on 5-adic orders. For AlphaBound/BetaBound the arguments are
/// (i, j); for XOdd/XEven they are (m, i) with x-level 2m-1 / 2m; XFirst is 0.
long bound(BoundKind kind, long a, long b);

/// floor((5k-10)/6) + floor((5i-k-1)/6).
long h_function(long i, long k);

/// The printed table of nu(alpha_{i,j}) for i <= 5, j <= 18.
const std::array<std::array<Valuation, 18>, 5>& printed_table1();

Report verify_table1();

/// nu(M_{i,j}) >= bound for i <= i_max, j <= j_max. `matrix` overrides the
/// generated one (it must have at least i_max rows).
Report verify_matrix_bounds(matrices::MatrixKind kind, long i_max, long j_max,
                            const matrices::BandedMatrix* matrix = nullptr);

/// Levels up to this one are computed exactly for the bound check; the level
/// above is computed mod 5^(bound + 1) entry by entry.
inline constexpr long kExactBoundLevels = 5;

/// Per-entry precisions that decide the level-`level` bounds: 1 for i = 1, bound + 1 after.
std::vector<long> x_bound_targets(long level, long length);

/// x_1..x_{m_max} as used by verify_x_bounds: exact up to level m_max - 1 (or
/// all exact when m_max <= kExactBoundLevels), the top level via step_mod.
std::vector<matrices::XVector> x_vectors_for_bounds(long m_max);

/// Valuation bounds for x_1..x_{m_max}, and nu(x_{m,1}) == 0 at every level.
Report verify_x_bounds(long m_max);
Report verify_x_bounds(const std::vector<matrices::XVector>& levels);

Report verify_h_monotonicity(long i_max, long k_max);

enum class Family { Conj1, Conj2, Cor19 };

const char* to_string(Family f);

struct CongruenceParams {
    Family family = Family::Conj1;
    long ell = 1;
    long k_max = 1;
    long n_max = 10;
    bool fast_mod = false;
    /// Longest spt series the check may build; -1 for no cap.
    long max_series = -1;
};

/// Length of the spt series (indexed by (a-1)/2) needed for `p`.
long congruence_series_length(const CongruenceParams& p);

/// Largest power of 5 any congruence in the family is taken modulo.
long congruence_modulus_exponent(const CongruenceParams& p);

/// Throws PrecisionExceeded when the needed series is longer than p.max_series
/// (or than `exact`, when a precomputed series is supplied).
Report verify_congruence_family(const CongruenceParams& p, const series::LaurentSeries* exact = nullptr);

/// Coefficients of delta at exponents 1, 3 mod 5 vanish on [0, prec).
Report verify_delta_classes(long prec);

/// nu table for the first i_max rows of a matrix, columns 1..j_max; "inf" for zero.
std::string valuation_table_csv(const matrices::BandedMatrix& m, long j_max);

}  // namespace qlab::padic
