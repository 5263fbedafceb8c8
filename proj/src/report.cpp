#include <qlab/report.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qlab {

const char* to_string(Status s) {
    switch (s) {
        case Status::Pass:
            return "pass";
        case Status::Fail:
            return "fail";
        case Status::Skipped:
            return "skipped";
    }
    return "unknown";
}

namespace {

Status status_from_string(const std::string& s) {
    if (s == "pass") return Status::Pass;
    if (s == "fail") return Status::Fail;
    if (s == "skipped") return Status::Skipped;
    throw std::invalid_argument("unknown report status '" + s + "'");
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

void Report::fail(std::string location, std::string expected, std::string actual) {
    status = Status::Fail;
    if (!first_failure) first_failure = Failure{std::move(location), std::move(expected), std::move(actual)};
}

void Report::skip(std::string text) {
    if (status != Status::Fail) status = Status::Skipped;
    notes.push_back(std::move(text));
}

void Report::param(std::string key, std::string value) {
    for (auto& [k, v] : params)
        if (k == key) {
            v = std::move(value);
            return;
        }
    params.emplace_back(std::move(key), std::move(value));
}

void Report::absorb(const Report& sub, const std::string& prefix) {
    if (sub.failed()) {
        const auto& f = *sub.first_failure;
        fail(prefix + ": " + f.location, f.expected, f.actual);
    }
    precision_used = std::max(precision_used, sub.precision_used);
    for (const auto& n : sub.notes) notes.push_back(prefix + ": " + n);
}

nlohmann::ordered_json to_json(const Report& r, bool stable) {
    nlohmann::ordered_json j;
    j["check"] = r.check;
    auto params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.params) params[k] = v;
    j["params"] = std::move(params);
    j["status"] = to_string(r.status);
    if (r.first_failure) {
        nlohmann::ordered_json f;
        f["location"] = r.first_failure->location;
        f["expected"] = r.first_failure->expected;
        f["actual"] = r.first_failure->actual;
        j["first_failure"] = std::move(f);
    } else {
        j["first_failure"] = nullptr;
    }
    j["precision_used"] = r.precision_used;
    j["elapsed_ms"] = stable ? 0L : r.elapsed_ms;
    j["notes"] = r.notes;
    return j;
}

Report report_from_json(const nlohmann::json& j) {
    Report r;
    r.check = j.at("check").get<std::string>();
    for (const auto& [k, v] : j.at("params").items()) r.params.emplace_back(k, v.get<std::string>());
    r.status = status_from_string(j.at("status").get<std::string>());
    if (!j.at("first_failure").is_null()) {
        const auto& f = j.at("first_failure");
        r.first_failure = Failure{f.at("location").get<std::string>(), f.at("expected").get<std::string>(),
                                  f.at("actual").get<std::string>()};
    }
    r.precision_used = j.at("precision_used").get<long>();
    r.elapsed_ms = j.at("elapsed_ms").get<long>();
    r.notes = j.at("notes").get<std::vector<std::string>>();
    return r;
}

std::string to_csv(const std::vector<Report>& reports, bool stable) {
    std::ostringstream out;
    out << "check,status,params,failure_location,expected,actual,precision_used,elapsed_ms,notes\n";
    for (const auto& r : reports) {
        std::string params;
        for (const auto& [k, v] : r.params) {
            if (!params.empty()) params += ";";
            params += k + "=" + v;
        }
        std::string notes;
        for (const auto& n : r.notes) {
            if (!notes.empty()) notes += " | ";
            notes += n;
        }
        out << csv_field(r.check) << ',' << to_string(r.status) << ',' << csv_field(params) << ','
            << csv_field(r.first_failure ? r.first_failure->location : "") << ','
            << csv_field(r.first_failure ? r.first_failure->expected : "") << ','
            << csv_field(r.first_failure ? r.first_failure->actual : "") << ',' << r.precision_used << ','
            << (stable ? 0L : r.elapsed_ms) << ',' << csv_field(notes) << '\n';
    }
    return out.str();
}

std::string to_text(const std::vector<Report>& reports, bool stable) {
    std::ostringstream out;
    for (const auto& r : reports) {
        out << (r.status == Status::Pass ? "PASS " : r.status == Status::Fail ? "FAIL " : "SKIP ") << r.check;
        if (!r.params.empty()) {
            out << " (";
            bool first = true;
            for (const auto& [k, v] : r.params) {
                out << (first ? "" : ", ") << k << "=" << v;
                first = false;
            }
            out << ")";
        }
        out << "  used=" << r.precision_used;
        if (!stable) out << "  " << r.elapsed_ms << "ms";
        out << '\n';
        if (r.first_failure)
            out << "    first failure at " << r.first_failure->location << ": expected " << r.first_failure->expected
                << ", got " << r.first_failure->actual << '\n';
        for (const auto& n : r.notes) out << "    note: " << n << '\n';
    }
    return out.str();
}

}  // namespace qlab
