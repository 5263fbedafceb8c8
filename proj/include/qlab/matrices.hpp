#pragma once

#include <qlab/report.hpp>
#include <qlab/series.hpp>

#include <json.hpp>

#include <string>
#include <vector>

namespace qlab::matrices {

enum class MatrixKind { Alpha, Beta };

const char* to_string(MatrixKind k);

/// Polynomial in y, index = degree.
using PolyY = std::vector<BigInt>;

/// Numerator / denominator as polynomials in x whose coefficients are polynomials in y.
struct BivariateRational {
    std::vector<PolyY> numerator;    // index = x-degree
    std::vector<PolyY> denominator;  // index = x-degree; denominator[0] == 1

    static const BivariateRational& for_kind(MatrixKind k);
};

/// Rows i = 1.. of alpha_{i,j} (or beta_{i,j}); row i stores columns j = 1..5i.
struct BandedMatrix {
    MatrixKind kind = MatrixKind::Alpha;
    std::vector<std::vector<BigInt>> rows;

    long row_count() const { return static_cast<long>(rows.size()); }
    /// Entry (i, j), 1-based; zero outside the band.
    const BigInt& at(long i, long j) const;
};

/// x_m = (x_{m,1}, x_{m,2}, ...), trailing zeros trimmed.
struct XVector {
    long level = 1;
    std::vector<BigInt> entries;
    /// Empty for exact entries. Otherwise entry i is a residue in
    /// [0, 5^precision[i-1]) and only that residue is known.
    std::vector<long> precision;

    bool exact() const { return precision.empty(); }

    long support() const { return static_cast<long>(entries.size()); }
    /// Entry i, 1-based; zero beyond the support.
    const BigInt& at(long i) const;
};

/// Yields the x-coefficients of N/D one at a time as polynomials in y, using
/// row_i = N_i - sum_{k>=1} D_k row_{i-k}. Keeps only as many rows as D needs.
class RowGenerator {
public:
    explicit RowGenerator(const BivariateRational& gf);

    /// Row i (starting at i = 1) as a y-polynomial, untruncated.
    PolyY next();
    long index() const { return index_; }

private:
    const BivariateRational& gf_;
    std::vector<PolyY> history_;  // history_[k] = row_{index_ - k}
    long index_ = 0;
};

/// Rows 1..i_max from the generating function, columns j = 1..5i.
/// Throws std::logic_error if a row has a y^0 term or support beyond y^{5i}.
BandedMatrix expand_matrix(MatrixKind kind, long i_max);
BandedMatrix expand_matrix(const BivariateRational& gf, MatrixKind kind, long i_max);

/// Rows 1-5 taken from the printed U-image expansions, later rows by the
/// quintic recurrence alone.
BandedMatrix expand_matrix_from_seeds(MatrixKind kind, long i_max);

/// GF rows against seeded rows, plus the band check (one extra y-degree is zero).
Report verify_matrix_generation(MatrixKind kind, long i_max);

/// GF rows against xi-basis expansions of the U-images for i <= i_max.
Report cross_check_matrix(MatrixKind kind, long i_max, long prec);
Report cross_check_matrix(const BivariateRational& gf, MatrixKind kind, long i_max, long prec);

/// x_1 = (18, 720, 7625, 32500, 50000).
XVector x_first();
/// The 17 printed coefficients of x_2.
const std::vector<BigInt>& printed_x_second();

/// x M for M = A (odd level) or B (even level). Evaluated through the
/// transposed recurrence, so M is never materialized and only small-by-big
/// products occur.
XVector step(const XVector& x);

/// Same product formed row by row from RowGenerator; quadratic in big-by-big
/// multiplications, used as an independent route at small levels.
XVector step_direct(const XVector& x);

/// x M with output entry j reduced mod 5^{targets[j-1]} (entries past the end
/// of `targets` use its last value). `x` must be exact. Each intermediate is
/// carried only to the precision some output needs, scaled by a proven lower
/// bound on its 5-adic order, so the cost tracks the requested precision
/// rather than the size of the exact product.
XVector step_mod(const XVector& x, const std::vector<long>& targets);

/// Largest level computed unless allow_large is set.
inline constexpr long kDefaultMaxLevel = 6;

/// x_1 .. x_{m_max}.
std::vector<XVector> x_vectors(long m_max, bool allow_large = false);
XVector x_vector(long m, bool allow_large = false);

/// Length of spt_series needed to compare the level-m family on [0, prec).
long theorem_series_length(long m, long prec);

/// The level-m identity: the residue-2 extraction of the spt series applied m
/// times equals unit * sum_i x_{m,i} xi^{i-1} on [0, prec). Odd m uses gamma, even m delta.
/// Pass `spt` to reuse a precomputed series (must reach theorem_series_length).
Report verify_theorem_gf(long m, long prec, const series::LaurentSeries* spt = nullptr);

/// x_1 A == printed x_2, entry by entry.
Report verify_x_second();

/// For levels 2..m_max: the transposed step, the row-by-row product and the
/// reduced step (at two precision profiles) agree.
Report verify_x_routes(long m_max);

nlohmann::ordered_json to_json(const BandedMatrix& m);
std::string to_csv(const BandedMatrix& m);
nlohmann::ordered_json to_json(const XVector& x);
std::string to_csv(const XVector& x);

}  // namespace qlab::matrices
