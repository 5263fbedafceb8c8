#pragma once

#include <qlab/report.hpp>
#include <qlab/series.hpp>

#include <array>
#include <vector>

namespace qlab::xi_basis {

using series::LaurentSeries;

enum class Unit { Gamma, Delta };

const char* to_string(Unit u);

/// Which family of U-images: v_i = U(q^-2 gamma xi^{i-1}) (delta basis) or
/// w_i = U(q^-2 delta xi^{i-1}) (gamma basis).
enum class ImageKind { V, W };

/// Asserts target = unit * sum_j coeffs[j] xi^j on q-exponents [0, certified_prec).
struct XiBasisExpansion {
    Unit unit = Unit::Delta;
    std::vector<BigInt> coeffs;
    long certified_prec = 0;

    /// Coefficients with trailing zeros removed.
    std::vector<BigInt> trimmed() const;
    /// Highest index with a nonzero coefficient, -1 for the zero expansion.
    long degree() const;
};

/// Five quintics P_1..P_5 in one variable with zero constant term:
/// xi^5 = sum_k P_k(X) xi^{5-k} with X = xi(q^5).
struct RecurrencePolys {
    std::array<std::array<long, 6>, 5> coeffs{};  // coeffs[k-1][p]: coefficient of t^p in P_k

    static const RecurrencePolys& chern_hirschhorn();
};

/// The unit series gamma or delta on [0, prec).
LaurentSeries unit_series(Unit u, long prec);

/// sum_j c_j t^j evaluated at a series t (offset >= 1), known to `prec`.
LaurentSeries evaluate_poly(std::span<const BigInt> c, const LaurentSeries& t, long prec);
LaurentSeries evaluate_poly(std::span<const long> c, const LaurentSeries& t, long prec);

/// Greedy peel-off of f / unit in powers of xi. Throws SupportExceeded when a
/// nonzero coefficient appears above max_deg, PrecisionExceeded if f is too short.
XiBasisExpansion express_in_xi_basis(const LaurentSeries& f, Unit unit, long max_deg, long prec);

/// unit * sum_j c_j xi^j on [0, prec).
LaurentSeries reconstruct(const XiBasisExpansion& e, long prec);

/// Input precision needed before the q^-2 shift so that U lands on [0, prec).
constexpr long u_image_input_prec(long prec) { return 5 * prec - 2 + 5; }

/// U(q^-2 * unit * xi^{i-1}) as a q-series on [0, prec).
LaurentSeries u_image_series(ImageKind kind, long i, long prec);

/// v_i in the delta-xi basis (max degree 5i - 1).
XiBasisExpansion u_image_alpha(long i, long prec);
/// w_i in the gamma-xi basis (max degree 5i - 1).
XiBasisExpansion u_image_beta(long i, long prec);

/// The ten printed expansions of v_1..v_5 and w_1..w_5, as xi-coefficient lists c_0, c_1, ...
const std::vector<std::vector<BigInt>>& printed_alpha_initial_values();
const std::vector<std::vector<BigInt>>& printed_beta_initial_values();

/// xi^5 - sum_k P_k(X) xi^{5-k} == 0 on [0, prec).
Report verify_modular_equation(long prec, const RecurrencePolys& polys = RecurrencePolys::chern_hirschhorn());

/// v_1..v_5 (or w_1..w_5) against the printed expansions.
Report verify_initial_values(ImageKind kind, long prec);

/// For 6 <= i <= i_max: image(i) == sum_k P_k(xi) image(i-k), each image of xi-degree <= 5i-1,
/// and image(6) also equals the right side seeded from the printed expansions.
Report verify_recurrence(ImageKind kind, long i_max, long prec);

/// E(q) == E(q^25) (1/R(q^5) + linear_sign*q - q^2 R(q^5)) on [0, prec), plus the
/// five residue classes of E(q) mod 5.
Report verify_dissection_E(long prec, int linear_sign = -1);

}  // namespace qlab::xi_basis
