#include "moyal/harness/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace moyal::harness {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& v) {
    T out{};
    const char* end = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc() || ptr != end) throw ConfigError("config: bad value for " + key + ": '" + v + "'");
    return out;
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_number<double>(key, trim(item)));
    if (out.empty()) throw ConfigError("config: empty list for " + key);
    return out;
}

std::string fmt(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

std::string fmt_list(const std::vector<double>& v) {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + fmt(v[k]);
    return s;
}

using Setter = std::function<void(ExperimentConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"experiment", [](auto& c, auto&, auto& v) { c.experiment = v; }},
        {"d", [](auto& c, auto& k, auto& v) { c.d = parse_number<int>(k, v); }},
        {"theta0", [](auto& c, auto& k, auto& v) { c.theta0 = parse_number<double>(k, v); }},
        {"grid_L", [](auto& c, auto& k, auto& v) { c.grid_L = parse_number<double>(k, v); }},
        {"grid_n", [](auto& c, auto& k, auto& v) { c.grid_n = parse_number<int>(k, v); }},
        {"grid_scheme",
         [](auto& c, auto& k, auto& v) {
             if (v == "midpoint")
                 c.grid_scheme = numerics::GridScheme::MidpointUniform;
             else if (v == "gauss-legendre")
                 c.grid_scheme = numerics::GridScheme::GaussLegendre;
             else
                 throw ConfigError("config: " + k + " must be midpoint or gauss-legendre");
         }},
        {"refine_L", [](auto& c, auto& k, auto& v) { c.refine_L = parse_list(k, v); }},
        {"basis_M", [](auto& c, auto& k, auto& v) { c.basis_M = parse_number<int>(k, v); }},
        {"basis_L", [](auto& c, auto& k, auto& v) { c.basis_L = parse_number<double>(k, v); }},
        {"basis_n", [](auto& c, auto& k, auto& v) { c.basis_n = parse_number<int>(k, v); }},
        {"sphere_nodes", [](auto& c, auto& k, auto& v) { c.sphere_nodes = parse_number<int>(k, v); }},
        {"window_lo", [](auto& c, auto& k, auto& v) { c.window_lo = parse_number<double>(k, v); }},
        {"window_hi", [](auto& c, auto& k, auto& v) { c.window_hi = parse_number<double>(k, v); }},
        {"stencil", [](auto& c, auto& k, auto& v) { c.stencil = parse_list(k, v); }},
        {"seed", [](auto& c, auto& k, auto& v) { c.seed = parse_number<std::uint64_t>(k, v); }},
        {"out", [](auto& c, auto&, auto& v) { c.out = v; }},
        {"wi_N", [](auto& c, auto& k, auto& v) { c.wi_N = parse_number<long>(k, v); }},
        {"sandwich_count", [](auto& c, auto& k, auto& v) { c.sandwich_count = parse_number<int>(k, v); }},
        {"pairs", [](auto& c, auto& k, auto& v) { c.pairs = parse_number<int>(k, v); }},
    };
    return table;
}

void require(bool ok, const std::string& msg) {
    if (!ok) throw ConfigError("config: " + msg);
}

}  // namespace

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names = {"verify-algebra", "trace-formula", "residue", "spectrum",
                                                   "qd",             "seminorms",     "all"};
    return names;
}

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    std::set<std::string> seen;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        const auto it = setters().find(key);
        if (it == setters().end()) throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        if (!seen.insert(key).second) throw ConfigError("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        if (value.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty value for " + key);
        it->second(cfg, key, value);
    }
    validate(cfg);
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("config: cannot read " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

void validate(const ExperimentConfig& c) {
    const auto& names = experiment_names();
    require(std::find(names.begin(), names.end(), c.experiment) != names.end(), "unknown experiment '" + c.experiment + "'");
    require(c.d == 2, "d must be 2 (the matrix basis is built for d = 2 only)");
    require(c.theta0 > 0.0 && std::isfinite(c.theta0), "theta0 must be positive");
    require(c.grid_L > 0.0 && std::isfinite(c.grid_L), "grid_L must be positive");
    require(c.grid_n >= 4 && c.grid_n % 2 == 0 && c.grid_n <= 128, "grid_n must be even in [4, 128]");
    require(c.refine_L.size() == 3, "refine_L needs three box sizes");
    require(std::is_sorted(c.refine_L.begin(), c.refine_L.end()) && c.refine_L.front() > 0.0 &&
                std::adjacent_find(c.refine_L.begin(), c.refine_L.end()) == c.refine_L.end(),
            "refine_L must be positive and strictly increasing");
    require(c.basis_M >= 1 && c.basis_M <= 40, "basis_M must be in [1, 40]");
    require(c.basis_L > 0.0 && c.basis_n >= 4 && c.basis_n % 2 == 0 && c.basis_n <= 256, "basis grid out of range");
    require(c.sphere_nodes >= 8 && c.sphere_nodes <= 4096, "sphere_nodes must be in [8, 4096]");
    require(c.window_lo > 0.0 && c.window_lo < c.window_hi && c.window_hi < 1.0, "need 0 < window_lo < window_hi < 1");
    require(c.stencil.size() >= 4, "stencil needs at least 4 points");
    for (std::size_t k = 0; k < c.stencil.size(); ++k)
        require(c.stencil[k] > 0.0 && (k == 0 || c.stencil[k] < c.stencil[k - 1]),
                "stencil offsets must be positive and decreasing");
    require(c.wi_N >= 10000, "wi_N must be at least 1e4");
    require(c.sandwich_count >= 1 && c.pairs >= 1, "sandwich_count and pairs must be positive");
    require(!c.out.empty(), "out must be non-empty");
}

std::string canonical_text(const ExperimentConfig& c) {
    std::ostringstream os;
    os << "experiment=" << c.experiment << "\nd=" << c.d << "\ntheta0=" << fmt(c.theta0) << "\ngrid_L=" << fmt(c.grid_L)
       << "\ngrid_n=" << c.grid_n << "\ngrid_scheme="
       << (c.grid_scheme == numerics::GridScheme::MidpointUniform ? "midpoint" : "gauss-legendre")
       << "\nrefine_L=" << fmt_list(c.refine_L) << "\nbasis_M=" << c.basis_M << "\nbasis_L=" << fmt(c.basis_L)
       << "\nbasis_n=" << c.basis_n << "\nsphere_nodes=" << c.sphere_nodes << "\nwindow_lo=" << fmt(c.window_lo)
       << "\nwindow_hi=" << fmt(c.window_hi) << "\nstencil=" << fmt_list(c.stencil) << "\nseed=" << c.seed
       << "\nwi_N=" << c.wi_N << "\nsandwich_count=" << c.sandwich_count << "\npairs=" << c.pairs << "\n";
    return os.str();
}

std::string config_hash(const ExperimentConfig& c) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : canonical_text(c)) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace moyal::harness
