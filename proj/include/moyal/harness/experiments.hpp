#pragma once

#include <iosfwd>
#include <vector>

#include "moyal/harness/config.hpp"
#include "moyal/harness/report.hpp"

namespace moyal::harness {

// Each criterion function evaluates one acceptance criterion, records its
// values in the report and writes any CSV output below cfg.out.
void criterion_1(const ExperimentConfig& cfg, Report& r);   // basis contract
void criterion_2(const ExperimentConfig& cfg, Report& r);   // Hilbert-Schmidt identity
void criterion_3(const ExperimentConfig& cfg, Report& r);   // trace formula
void criterion_4(const ExperimentConfig& cfg, Report& r);   // h_z identity
void criterion_5(const ExperimentConfig& cfg, Report& r);   // zeta residue
void criterion_6(const ExperimentConfig& cfg, Report& r);   // Wiener-Ikehara synthetic
void criterion_7(const ExperimentConfig& cfg, Report& r);   // headline tail coefficient
void criterion_8(const ExperimentConfig& cfg, Report& r);   // quantized derivative
void criterion_9(const ExperimentConfig& cfg, Report& r);   // seminorm sandwich
void criterion_10(const ExperimentConfig& cfg, Report& r);  // commutator decay exponents
void criterion_11(const ExperimentConfig& cfg, Report& r);  // limit lemmas
// Repeats the criteria in `ids` twice in scratch directories and compares
// report fingerprints and CSV bytes.
void criterion_12(const ExperimentConfig& cfg, Report& r, const std::vector<int>& ids = {2, 3, 4, 6, 9, 10, 11});

void run_criterion(int id, const ExperimentConfig& cfg, Report& r);

Report cmd_verify_algebra(const ExperimentConfig& cfg);
Report cmd_trace_formula(const ExperimentConfig& cfg);
Report cmd_residue(const ExperimentConfig& cfg);
Report cmd_spectrum(const ExperimentConfig& cfg);
Report cmd_qd(const ExperimentConfig& cfg);
Report cmd_seminorms(const ExperimentConfig& cfg);
Report cmd_all(const ExperimentConfig& cfg);
// Dispatches on cfg.experiment and writes <out>/<experiment>.json.
Report run_experiment(const ExperimentConfig& cfg);

// Command-line entry point. Exit codes: 0 all criteria pass, 1 a criterion
// failed, 2 usage or config error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace moyal::harness
