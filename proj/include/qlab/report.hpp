#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qlab {

enum class Status { Pass, Fail, Skipped };

const char* to_string(Status s);

struct Failure {
    std::string location;
    std::string expected;
    std::string actual;
};

/// Outcome of one named verification. A failing report always carries the
/// first failure witness; a passing one never does.
struct Report {
    std::string check;
    std::vector<std::pair<std::string, std::string>> params;
    Status status = Status::Pass;
    std::optional<Failure> first_failure;
    long precision_used = 0;
    long elapsed_ms = 0;
    std::vector<std::string> notes;

    bool passed() const { return status == Status::Pass; }
    bool failed() const { return status == Status::Fail; }

    /// Records a failure; only the first one is kept as the witness.
    void fail(std::string location, std::string expected, std::string actual);
    void skip(std::string note);
    void note(std::string text) { notes.push_back(std::move(text)); }
    void param(std::string key, std::string value);
    void param(std::string key, long value) { param(std::move(key), std::to_string(value)); }
    /// Folds a sub-report in: its failure (if first) and its notes.
    void absorb(const Report& sub, const std::string& prefix);
};

/// Report fields in the documented key order. With `stable`, elapsed_ms is written as 0.
nlohmann::ordered_json to_json(const Report& r, bool stable = false);
Report report_from_json(const nlohmann::json& j);

/// One header line plus one row per report.
std::string to_csv(const std::vector<Report>& reports, bool stable = false);
std::string to_text(const std::vector<Report>& reports, bool stable = false);

}  // namespace qlab
