#include "locaos/report.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "json.hpp"
#include "locaos/text.hpp"

namespace locaos {

const CellSummary& ComparisonReport::summary(int instance, int policy) const {
    const auto np = static_cast<int>(policy_names.size());
    return summaries.at(static_cast<std::size_t>(instance * np + policy));
}

namespace {

std::vector<double> column(const std::vector<CellResult>& cells, int instance, int policy, bool distance) {
    std::vector<double> out;
    for (const CellResult& c : cells) {
        if (c.instance == instance && c.policy == policy) {
            out.push_back(distance ? c.best_distance : static_cast<double>(c.trapped_after_trapped));
        }
    }
    return out;
}

void comments_out(std::ostream& out, const std::vector<std::string>& comments) {
    for (const auto& c : comments) out << "# " << c << "\n";
}

}  // namespace

ComparisonReport build_report(const ExperimentConfig& cfg, const std::vector<Instance>& instances,
                              std::vector<CellResult> cells) {
    ComparisonReport r;
    for (const auto& inst : instances) r.instance_names.push_back(inst.name());
    for (const auto& p : cfg.policies) r.policy_names.push_back(p.name());
    r.cells = std::move(cells);
    const int ni = static_cast<int>(instances.size());
    const int np = static_cast<int>(cfg.policies.size());
    if (r.cells.size() != static_cast<std::size_t>(ni) * np * cfg.repeats) {
        throw std::logic_error("build_report: cell count does not match the configuration");
    }

    for (int i = 0; i < ni; ++i) {
        for (int p = 0; p < np; ++p) {
            CellSummary s;
            s.instance = i;
            s.policy = p;
            s.best_distance = moments(column(r.cells, i, p, true));
            s.trapped_after_trapped = moments(column(r.cells, i, p, false));
            std::vector<double> pert;
            for (const CellResult& c : r.cells) {
                if (c.instance == i && c.policy == p) pert.push_back(c.perturbations);
            }
            s.perturbations = moments(pert);
            r.summaries.push_back(s);
        }
    }

    for (int a = 0; a < np; ++a) {
        for (int b = a + 1; b < np; ++b) {
            WinLossTie tally{a, b, 0, 0, 0};
            std::vector<double> means_a;
            std::vector<double> means_b;
            std::vector<double> tat_a;
            std::vector<double> tat_b;
            for (int i = 0; i < ni; ++i) {
                PairTest t;
                t.instance = i;
                t.policy_a = a;
                t.policy_b = b;
                const auto da = column(r.cells, i, a, true);
                const auto db = column(r.cells, i, b, true);
                const auto ta = column(r.cells, i, a, false);
                const auto tb = column(r.cells, i, b, false);
                t.mean_a = moments(da).mean;
                t.mean_b = moments(db).mean;
                t.distance = wilcoxon_signed_rank(da, db);
                t.tat_mean_a = moments(ta).mean;
                t.tat_mean_b = moments(tb).mean;
                t.trapped_after_trapped = wilcoxon_signed_rank(ta, tb);
                r.tests.push_back(t);
                if (t.mean_a < t.mean_b) {
                    ++tally.wins;
                } else if (t.mean_a > t.mean_b) {
                    ++tally.losses;
                } else {
                    ++tally.ties;
                }
                means_a.push_back(t.mean_a);
                means_b.push_back(t.mean_b);
                tat_a.push_back(t.tat_mean_a);
                tat_b.push_back(t.tat_mean_b);
            }
            r.tallies.push_back(tally);
            PairTest agg;
            agg.policy_a = a;
            agg.policy_b = b;
            agg.mean_a = moments(means_a).mean;
            agg.mean_b = moments(means_b).mean;
            agg.distance = wilcoxon_signed_rank(means_a, means_b);
            agg.tat_mean_a = moments(tat_a).mean;
            agg.tat_mean_b = moments(tat_b).mean;
            agg.trapped_after_trapped = wilcoxon_signed_rank(tat_a, tat_b);
            r.tests.push_back(agg);
        }
    }
    std::stable_sort(r.tests.begin(), r.tests.end(), [](const PairTest& x, const PairTest& y) {
        const int kx = x.instance < 0 ? std::numeric_limits<int>::max() : x.instance;
        const int ky = y.instance < 0 ? std::numeric_limits<int>::max() : y.instance;
        return kx < ky;
    });
    return r;
}

void write_cells_csv(std::ostream& out, const ComparisonReport& r, const std::vector<std::string>& comments) {
    comments_out(out, comments);
    out << "instance,policy,repeat,seed,initial_distance,best_distance,final_distance,trapped_after_trapped,"
           "perturbations\n";
    for (const CellResult& c : r.cells) {
        out << r.instance_names[c.instance] << "," << r.policy_names[c.policy] << "," << c.repeat << "," << c.seed
            << "," << format_double(c.initial_distance) << "," << format_double(c.best_distance) << ","
            << format_double(c.final_distance) << "," << c.trapped_after_trapped << "," << c.perturbations << "\n";
    }
}

void write_summary_csv(std::ostream& out, const ComparisonReport& r, const std::vector<std::string>& comments) {
    comments_out(out, comments);
    out << "instance,policy,runs,distance_mean,distance_variance,tat_mean,tat_variance,perturbations_mean\n";
    for (const CellSummary& s : r.summaries) {
        out << r.instance_names[s.instance] << "," << r.policy_names[s.policy] << "," << s.best_distance.count << ","
            << format_double(s.best_distance.mean) << "," << format_double(s.best_distance.variance) << ","
            << format_double(s.trapped_after_trapped.mean) << "," << format_double(s.trapped_after_trapped.variance)
            << "," << format_double(s.perturbations.mean) << "\n";
    }
}

void write_tests_csv(std::ostream& out, const ComparisonReport& r, const std::vector<std::string>& comments) {
    comments_out(out, comments);
    out << "instance,policy_a,policy_b,distance_mean_a,distance_mean_b,distance_p,distance_n,distance_exact,"
           "tat_mean_a,tat_mean_b,tat_p,tat_n,tat_exact\n";
    for (const PairTest& t : r.tests) {
        out << (t.instance < 0 ? std::string("all") : r.instance_names[t.instance]) << ","
            << r.policy_names[t.policy_a] << "," << r.policy_names[t.policy_b] << "," << format_double(t.mean_a)
            << "," << format_double(t.mean_b) << "," << format_double(t.distance.p_value) << "," << t.distance.n
            << "," << (t.distance.exact ? 1 : 0) << "," << format_double(t.tat_mean_a) << ","
            << format_double(t.tat_mean_b) << "," << format_double(t.trapped_after_trapped.p_value) << ","
            << t.trapped_after_trapped.n << "," << (t.trapped_after_trapped.exact ? 1 : 0) << "\n";
    }
}

std::string report_json(const ComparisonReport& r, const std::vector<std::string>& config_lines,
                        double wall_seconds) {
    nlohmann::ordered_json j;
    j["config"] = config_lines;
    j["instances"] = r.instance_names;
    j["policies"] = r.policy_names;
    j["cells"] = r.cells.size();
    auto tests = nlohmann::ordered_json::array();
    for (const PairTest& t : r.tests) {
        if (t.instance >= 0) continue;
        tests.push_back({{"policy_a", r.policy_names[t.policy_a]},
                         {"policy_b", r.policy_names[t.policy_b]},
                         {"distance_mean_a", t.mean_a},
                         {"distance_mean_b", t.mean_b},
                         {"distance_p", t.distance.p_value},
                         {"distance_degenerate", t.distance.degenerate},
                         {"tat_mean_a", t.tat_mean_a},
                         {"tat_mean_b", t.tat_mean_b},
                         {"tat_p", t.trapped_after_trapped.p_value},
                         {"tat_degenerate", t.trapped_after_trapped.degenerate}});
    }
    j["aggregate_tests"] = std::move(tests);
    auto tallies = nlohmann::ordered_json::array();
    for (const WinLossTie& w : r.tallies) {
        tallies.push_back({{"policy_a", r.policy_names[w.policy_a]},
                           {"policy_b", r.policy_names[w.policy_b]},
                           {"wins", w.wins},
                           {"losses", w.losses},
                           {"ties", w.ties}});
    }
    j["win_loss_tie"] = std::move(tallies);
    j["wall_seconds"] = wall_seconds;
    return j.dump(2) + "\n";
}

}  // namespace locaos
