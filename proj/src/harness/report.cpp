#include "moyal/harness/report.hpp"

#include <algorithm>
#include <sstream>

namespace moyal::harness {

Report::Report(std::string experiment, const ExperimentConfig& cfg)
    : experiment_(std::move(experiment)), hash_(config_hash(cfg)) {
    inputs_ = {{"d", cfg.d},
               {"theta0", cfg.theta0},
               {"grid", {{"L", cfg.grid_L}, {"n", cfg.grid_n},
                         {"scheme", cfg.grid_scheme == numerics::GridScheme::MidpointUniform ? "midpoint" : "gauss-legendre"}}},
               {"refine_L", cfg.refine_L},
               {"basis", {{"M", cfg.basis_M}, {"L", cfg.basis_L}, {"n", cfg.basis_n}}},
               {"sphere_nodes", cfg.sphere_nodes},
               {"window", {cfg.window_lo, cfg.window_hi}},
               {"stencil", cfg.stencil},
               {"seed", cfg.seed},
               {"wi_N", cfg.wi_N},
               {"sandwich_count", cfg.sandwich_count},
               {"pairs", cfg.pairs}};
}

void Report::value(const std::string& key, const nlohmann::json& v, const std::string& source) {
    values_[key] = {{"value", v}, {"source", source}, {"config_hash", hash_}};
}

void Report::criterion(Criterion c) {
    auto it = std::find_if(criteria_.begin(), criteria_.end(), [&](const Criterion& o) { return o.id == c.id; });
    if (it != criteria_.end())
        *it = std::move(c);
    else
        criteria_.push_back(std::move(c));
    std::sort(criteria_.begin(), criteria_.end(), [](const Criterion& a, const Criterion& b) { return a.id < b.id; });
}

void Report::timing(const std::string& key, double seconds) { timing_[key] = seconds; }

void Report::file(const std::string& path) { files_.push_back(path); }

bool Report::all_pass() const {
    return std::all_of(criteria_.begin(), criteria_.end(), [](const Criterion& c) { return c.pass; });
}

nlohmann::json Report::to_json() const {
    nlohmann::json j;
    j["experiment"] = experiment_;
    j["config_hash"] = hash_;
    j["inputs"] = inputs_;
    j["values"] = values_;
    nlohmann::json crit = nlohmann::json::array();
    for (const auto& c : criteria_)
        crit.push_back({{"id", c.id},
                        {"name", c.name},
                        {"pass", c.pass},
                        {"measured", c.measured},
                        {"tolerance", c.tolerance},
                        {"detail", c.detail},
                        {"config_hash", hash_}});
    j["criteria"] = crit;
    j["files"] = files_;
    j["timing"] = timing_;
    return j;
}

std::string Report::fingerprint() const {
    nlohmann::json j = to_json();
    j.erase("timing");
    j.erase("files");
    return j.dump();
}

std::string criterion_line(const Criterion& c) {
    std::ostringstream os;
    os.precision(6);
    os << "criterion " << c.id << ": " << (c.pass ? "PASS" : "FAIL") << "  " << c.name << "  measured=" << c.measured
       << " tolerance=" << c.tolerance;
    if (!c.detail.empty()) os << "  (" << c.detail << ")";
    return os.str();
}

}  // namespace moyal::harness
