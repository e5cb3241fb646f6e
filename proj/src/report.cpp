#include "pdm/report.hpp"

#include <cstdio>
#include <sstream>

namespace pdm::report {

const char* tool_version() { return "1.0.0"; }

CheckRecord from_zero(const sym::ZeroStatus& z, std::string entry, std::string integral,
                      std::string check)
{
    CheckRecord r{std::move(entry), std::move(integral), std::move(check), z.tier(),
                  z.is_zero() ? "pass" : "fail", z.max_residual, z.points, {}};
    if (z.kind == sym::ZeroStatus::NonZero) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "nonzero at (%.6g, %.6g, %.6g): |value| = %.3e", z.witness[0],
                      z.witness[1], z.witness[2], std::abs(z.value));
        r.detail = buf;
    } else if (z.kind == sym::ZeroStatus::Inconclusive) {
        r.detail = "inconclusive: " + z.reason;
    }
    return r;
}

void VerificationReport::pass(std::string entry, std::string check, std::string tier, std::string detail)
{
    checks.push_back({std::move(entry), {}, std::move(check), std::move(tier), "pass", 0.0, 0, std::move(detail)});
}

void VerificationReport::fail(std::string entry, std::string check, std::string tier, std::string detail)
{
    checks.push_back({std::move(entry), {}, std::move(check), std::move(tier), "fail", 0.0, 0, std::move(detail)});
}

void VerificationReport::annotate(std::string entry, std::string check, std::string detail)
{
    checks.push_back({std::move(entry), {}, std::move(check), "none", "annotation", 0.0, 0, std::move(detail)});
}

void VerificationReport::append(const VerificationReport& o)
{
    checks.insert(checks.end(), o.checks.begin(), o.checks.end());
}

bool VerificationReport::passed() const { return count("fail") == 0; }

int VerificationReport::count(const std::string& status) const
{
    int n = 0;
    for (const auto& c : checks)
        n += c.status == status;
    return n;
}

Summary ReportDocument::summary() const
{
    Summary s;
    for (const auto& sec : sections)
        for (const auto& c : sec.checks) {
            if (c.status == "fail")
                ++s.failed;
            else if (c.status == "annotation")
                ++s.annotated;
            else if (c.tier == "numeric" || c.tier == "float")
                ++s.numeric;
            else
                ++s.proved;
        }
    return s;
}

bool ReportDocument::passed() const { return summary().failed == 0; }

nlohmann::ordered_json to_json(const CheckRecord& r)
{
    nlohmann::ordered_json j;
    j["entry"] = r.entry;
    j["integral"] = r.integral;
    j["check"] = r.check;
    j["tier"] = r.tier;
    j["status"] = r.status;
    j["max_residual"] = r.max_residual;
    j["points"] = r.points;
    if (!r.detail.empty())
        j["detail"] = r.detail;
    return j;
}

nlohmann::ordered_json to_json(const VerificationReport& r)
{
    nlohmann::ordered_json j;
    j["title"] = r.title;
    j["passed"] = r.passed();
    auto& arr = j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : r.checks)
        arr.push_back(to_json(c));
    return j;
}

nlohmann::ordered_json ReportDocument::to_json() const
{
    nlohmann::ordered_json j;
    j["tool"] = "pdmlab";
    j["version"] = version.empty() ? tool_version() : version;
    j["seed"] = policy.seed;
    j["policy"] = {{"points", policy.points},
                   {"tol", policy.tol},
                   {"coord_range", {policy.coord_min, policy.coord_max}},
                   {"param_range", {policy.param_min, policy.param_max}},
                   {"unit_sphere_gap", policy.unit_sphere_gap}};
    auto& secs = j["sections"] = nlohmann::ordered_json::array();
    for (const auto& s : sections)
        secs.push_back(report::to_json(s));
    Summary s = summary();
    j["summary"] = {{"proved", s.proved}, {"numeric", s.numeric}, {"failed", s.failed},
                    {"annotated", s.annotated}};
    return j;
}

std::string ReportDocument::to_text() const
{
    std::ostringstream os;
    os << "pdmlab " << (version.empty() ? tool_version() : version) << " seed " << policy.seed << " points "
       << policy.points << " tol " << policy.tol << "\n";
    for (const auto& sec : sections) {
        os << "== " << sec.title << (sec.passed() ? "  [ok]" : "  [FAILED]") << "\n";
        for (const auto& c : sec.checks) {
            os << "  " << (c.status == "pass" ? "pass " : c.status == "fail" ? "FAIL " : "note ");
            os << c.entry;
            if (!c.integral.empty())
                os << " " << c.integral;
            os << " " << c.check << " [" << c.tier;
            if (c.points)
                os << ", " << c.points << " pts, max " << c.max_residual;
            os << "]";
            if (!c.detail.empty())
                os << " " << c.detail;
            os << "\n";
        }
    }
    Summary s = summary();
    os << "summary: proved " << s.proved << ", numeric " << s.numeric << ", failed " << s.failed
       << ", annotated " << s.annotated << "\n";
    return os.str();
}

}  // namespace pdm::report
