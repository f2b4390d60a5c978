#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "moyal/harness/config.hpp"

namespace moyal::harness {

struct Criterion {
    int id = 0;
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

class Report {
public:
    Report(std::string experiment, const ExperimentConfig& cfg);

    // Named numeric output with a short provenance label.
    void value(const std::string& key, const nlohmann::json& v, const std::string& source);
    void criterion(Criterion c);
    void timing(const std::string& key, double seconds);
    void file(const std::string& path);

    const std::string& hash() const { return hash_; }
    const std::vector<Criterion>& criteria() const { return criteria_; }
    bool all_pass() const;

    nlohmann::json to_json() const;
    // Everything except wall-clock timings and output paths; used for determinism checks.
    std::string fingerprint() const;

private:
    std::string experiment_;
    std::string hash_;
    nlohmann::json inputs_;
    nlohmann::json values_ = nlohmann::json::object();
    nlohmann::json timing_ = nlohmann::json::object();
    std::vector<std::string> files_;
    std::vector<Criterion> criteria_;
};

// One line per criterion: "criterion N: PASS|FAIL name measured=... tolerance=... detail".
std::string criterion_line(const Criterion& c);

}  // namespace moyal::harness
