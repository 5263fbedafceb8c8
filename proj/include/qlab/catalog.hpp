#pragma once

#include <qlab/report.hpp>
#include <qlab/series.hpp>

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qlab::catalog {

/// Check parameters; unset fields take the check's default.
struct Params {
    std::optional<long> prec;
    std::optional<long> imax;
    std::optional<long> jmax;
    std::optional<long> mmax;
    std::optional<long> ell;
    std::optional<long> kmax;
    std::optional<long> nmax;
    std::optional<long> max_series;
    bool fast_mod = false;
};

/// Parameter names as they appear on the command line and in report params.
inline constexpr std::string_view kPrec = "prec";
inline constexpr std::string_view kImax = "imax";
inline constexpr std::string_view kJmax = "jmax";
inline constexpr std::string_view kMmax = "mmax";
inline constexpr std::string_view kEll = "ell";
inline constexpr std::string_view kKmax = "kmax";
inline constexpr std::string_view kNmax = "nmax";
inline constexpr std::string_view kMaxSeries = "max-series";
inline constexpr std::string_view kFastMod = "fast-mod";

struct CheckInfo {
    std::string name;
    std::string summary;
    std::vector<std::string_view> accepts;  // parameter names
};

/// The single registry, in catalog order.
const std::vector<CheckInfo>& checks();
const CheckInfo* find_check(std::string_view name);

/// Longest exact spt series a congruence check builds unless --max-series says otherwise.
inline constexpr long kDefaultExactSeriesCap = 200'000;
/// Same for the reduced (fast-mod) path.
inline constexpr long kDefaultFastSeriesCap = 2'000'000;

/// Holds the longest spt series built so far; shared read-only by checks.
class SeriesCache {
public:
    /// A series of length at least `len`.
    std::shared_ptr<const series::LaurentSeries> get(long len);

private:
    std::mutex mu_;
    std::shared_ptr<const series::LaurentSeries> series_;
};

/// Runs one check. Mathematical failures come back as FAIL, a precision
/// shortfall as SKIPPED. Throws UnknownCheck or InvalidParams for usage errors.
Report run_check(std::string_view name, const Params& params, SeriesCache* cache = nullptr);

/// Smallest budget run_all accepts.
inline constexpr long kMinBudget = 30;

/// Parameters run_all uses for `name` at `budget`.
Params budget_params(std::string_view name, long budget);

struct RunAllOptions {
    long budget = 60;
    long jobs = 1;
    /// Test hook: replaces the modular-equation coefficients by a perturbed set.
    bool inject_fault = false;
};

struct Summary {
    long passed = 0;
    long failed = 0;
    long skipped = 0;

    int exit_code() const { return failed > 0 ? 1 : 0; }
};

struct RunAllResult {
    std::vector<Report> reports;  // catalog order
    Summary summary;
};

Summary summarize(const std::vector<Report>& reports);

/// Runs every check at `budget`; reports come back in catalog order whatever the job count.
RunAllResult run_all(const RunAllOptions& opts);

}  // namespace qlab::catalog
