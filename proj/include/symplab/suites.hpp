#pragma once

#include <symplab/report.hpp>
#include <symplab/scenario.hpp>

#include <iosfwd>
#include <optional>
#include <string>

namespace symplab {

// Command-line overrides applied on top of the scenario file.
struct RunOverrides {
    std::optional<std::string> suite;
    std::optional<uint64_t> seed;
    std::optional<double> tol;  // replaces the scenario check tolerance
};

void suite_verify(const Scenario& sc, ReportWriter& rep);
void suite_table(const Scenario& sc, ReportWriter& rep, const std::string& csv_path);
void suite_kahler(const Scenario& sc, ReportWriter& rep);
void suite_distortion(const Scenario& sc, ReportWriter& rep);
void suite_hamiltonian(const Scenario& sc, ReportWriter& rep);

// Loads, runs, writes the report (and the CSV for the table suite), prints a
// summary. Exit status: 0 all checks pass, 1 check failure, 2 config parse
// or validation error, 3 numerical non-convergence (partial report kept).
int run_scenario(const std::string& config_path, const std::string& out_path,
                 const RunOverrides& overrides, std::ostream& log);

}  // namespace symplab
