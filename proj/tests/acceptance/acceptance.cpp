// Acceptance run: one PASS/FAIL line per criterion 1-12 at the default config.
#include <chrono>
#include <cstdlib>
#include <iostream>

#include "moyal/harness/experiments.hpp"

using namespace moyal::harness;

int main(int argc, char** argv) {
    ExperimentConfig cfg;
    cfg.out = argc > 1 ? argv[1] : "acceptance-out";
    if (const char* only = std::getenv("MOYAL_ACCEPTANCE_ONLY")) {
        // debugging aid: a single criterion id
        Report r("acceptance", cfg);
        run_criterion(std::atoi(only), cfg, r);
        for (const auto& c : r.criteria()) std::cout << criterion_line(c) << std::endl;
        return r.all_pass() ? 0 : 1;
    }
    Report r("acceptance", cfg);
    bool ok = true;
    for (int id = 1; id <= 12; ++id) {
        const auto t0 = std::chrono::steady_clock::now();
        try {
            run_criterion(id, cfg, r);
        } catch (const std::exception& e) {
            r.criterion({id, "error", false, 0.0, 0.0, e.what()});
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        for (const auto& c : r.criteria())
            if (c.id == id) {
                std::cout << criterion_line(c) << "  [" << static_cast<int>(secs) << " s]" << std::endl;
                ok = ok && c.pass;
            }
    }
    std::cout << (ok ? "acceptance: all criteria pass" : "acceptance: some criteria fail") << std::endl;
    return ok ? 0 : 1;
}
