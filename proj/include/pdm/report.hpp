#pragma once

#include "pdm/zero.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace pdm::report {

// One line of a verification report.
struct CheckRecord {
    std::string entry;
    std::string integral;
    std::string check;
    std::string tier;    // "symbolic", "numeric", "exact", "float" or "none"
    std::string status;  // "pass", "fail" or "annotation"
    double max_residual = 0.0;
    int points = 0;
    std::string detail;
};

CheckRecord from_zero(const sym::ZeroStatus& z, std::string entry, std::string integral,
                      std::string check);

struct VerificationReport {
    std::string title;
    std::vector<CheckRecord> checks;

    void add(CheckRecord r) { checks.push_back(std::move(r)); }
    void pass(std::string entry, std::string check, std::string tier, std::string detail = {});
    void fail(std::string entry, std::string check, std::string tier, std::string detail = {});
    void annotate(std::string entry, std::string check, std::string detail);
    void append(const VerificationReport& o);
    bool passed() const;
    int count(const std::string& status) const;
};

struct Summary {
    int proved = 0;
    int numeric = 0;
    int failed = 0;
    int annotated = 0;
};

struct ReportDocument {
    std::string version;
    sym::ZeroTestPolicy policy;
    std::vector<VerificationReport> sections;

    Summary summary() const;
    bool passed() const;
    nlohmann::ordered_json to_json() const;
    std::string to_text() const;
};

nlohmann::ordered_json to_json(const CheckRecord& r);
nlohmann::ordered_json to_json(const VerificationReport& r);

const char* tool_version();

}  // namespace pdm::report
