#pragma once

#include <qlab/series.hpp>

#include <random>

namespace testing_support {

using qlab::BigInt;
using qlab::series::LaurentSeries;

/// Random series on [offset, offset + len) with coefficients in [-bound, bound].
inline LaurentSeries random_series(std::mt19937_64& rng, long offset, long len, long bound = 50) {
    std::uniform_int_distribution<long> d(-bound, bound);
    std::vector<BigInt> c(static_cast<size_t>(len));
    for (auto& v : c) v = d(rng);
    return LaurentSeries(offset, std::move(c));
}

/// Same, with leading coefficient forced to +1 or -1.
inline LaurentSeries random_unit_series(std::mt19937_64& rng, long offset, long len) {
    auto f = random_series(rng, offset, len);
    auto c = f.coeffs();
    c[0] = (rng() & 1) ? 1 : -1;
    return LaurentSeries(offset, std::move(c));
}

/// Schoolbook product of the known windows with no truncation, for reference.
inline std::vector<BigInt> naive_product(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
    std::vector<BigInt> out(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

}  // namespace testing_support
