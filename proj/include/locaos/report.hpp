#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "locaos/experiment.hpp"
#include "locaos/stats.hpp"

namespace locaos {

struct CellSummary {
    int instance = 0;
    int policy = 0;
    Moments best_distance;
    Moments trapped_after_trapped;
    Moments perturbations;
};

// Paired test of two policies. instance = -1 pairs the per-instance means.
struct PairTest {
    int instance = -1;
    int policy_a = 0;
    int policy_b = 0;
    double mean_a = 0.0;
    double mean_b = 0.0;
    WilcoxonResult distance;
    double tat_mean_a = 0.0;
    double tat_mean_b = 0.0;
    WilcoxonResult trapped_after_trapped;
};

// Instance-level outcomes of policy a against policy b on mean best distance.
struct WinLossTie {
    int policy_a = 0;
    int policy_b = 0;
    int wins = 0;
    int losses = 0;
    int ties = 0;
};

struct ComparisonReport {
    std::vector<std::string> instance_names;
    std::vector<std::string> policy_names;
    std::vector<CellResult> cells;
    std::vector<CellSummary> summaries;  // instance-major, policies in config order
    std::vector<PairTest> tests;          // per instance, then the aggregate rows
    std::vector<WinLossTie> tallies;

    const CellSummary& summary(int instance, int policy) const;
};

ComparisonReport build_report(const ExperimentConfig& cfg, const std::vector<Instance>& instances,
                              std::vector<CellResult> cells);

// All writers prefix the rows with the given lines as '#' comments.
void write_cells_csv(std::ostream& out, const ComparisonReport& report, const std::vector<std::string>& comments);
void write_summary_csv(std::ostream& out, const ComparisonReport& report, const std::vector<std::string>& comments);
void write_tests_csv(std::ostream& out, const ComparisonReport& report, const std::vector<std::string>& comments);

// JSON record of the experiment: resolved config, aggregate tests, tallies and wall time.
std::string report_json(const ComparisonReport& report, const std::vector<std::string>& config_lines,
                        double wall_seconds);

}  // namespace locaos
