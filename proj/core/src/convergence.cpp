#include "lfrgen/metrics/convergence.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "lfrgen/cm/configuration_model.hpp"
#include "lfrgen/metrics/graph_metrics.hpp"
#include "lfrgen/random/rng.hpp"

namespace lfrgen {

namespace {

constexpr const char* kMetricNames[] = {"triangles", "assortativity", "clustering"};

std::vector<double> metric_values(const EdgeList& edges, node_id n) {
    const auto assort = degree_assortativity(edges);
    return {static_cast<double>(triangle_count(edges)),
            assort ? *assort : std::nan(""),
            avg_local_clustering(edges, n)};
}

std::optional<std::size_t> convergence_point(const std::vector<double>& means,
                                             double final_mean, double final_sd) {
    const double half = final_sd / 2.0;
    const std::size_t last = means.size() - 1;
    for (std::size_t p = 0; p < means.size(); ++p) {
        bool ok = true;
        const std::size_t window_end = std::min(p + 2, last);
        for (std::size_t j = p; j <= window_end && ok; ++j)
            ok = std::abs(means[j] - final_mean) <= half && !std::isnan(means[j]);
        if (ok)
            return p;
    }
    return std::nullopt;
}

} // namespace

const MetricSeries* EnsembleReport::find(const std::string& name) const {
    for (const auto& s : series)
        if (s.name == name)
            return &s;
    return nullptr;
}

void EnsembleReport::write_csv(std::ostream& out) const {
    out << "metric,snapshot_swaps_per_m,mean,stddev,S\n";
    for (const auto& s : series)
        for (std::size_t j = 0; j < s.mean.size(); ++j)
            out << s.name << ',' << j << ',' << s.mean[j] << ',' << s.stddev[j] << ','
                << ensemble_size << '\n';
}

EnsembleReport convergence_experiment(const EdgeList& seed_graph,
                                      const ConvergenceConfig& config,
                                      std::uint64_t seed) {
    if (config.ensemble_size < 1)
        throw ValidationError("ensemble size must be positive");
    if (!is_simple_edge_list(seed_graph))
        throw ValidationError("seed graph must be simple and sorted");

    const auto n = node_count(seed_graph);
    const auto m = static_cast<std::uint64_t>(seed_graph.size());
    const std::size_t snapshots = static_cast<std::size_t>(config.max_swap_multiples) + 1;
    const std::size_t n_metrics = std::size(kMetricNames);

    // values[member][snapshot][metric]
    std::vector<std::vector<std::vector<double>>> values(
        config.ensemble_size,
        std::vector<std::vector<double>>(snapshots, std::vector<double>(n_metrics)));

    const auto run_member = [&](std::uint64_t member) {
        Rng rng = Rng::from(seed, "ensemble-member", member);
        EdgeList graph;
        if (config.seeding == EnsembleSeed::shared_graph) {
            graph = seed_graph;
        } else {
            // Fresh configuration-model sample of the same degree sequence,
            // repaired to a simple graph (node ids back to 0-based).
            const auto degrees = degrees_of(seed_graph, n);
            auto multi = cm_sample(degrees, rng);
            for (auto& e : multi) {
                e.u -= 1;
                e.v -= 1;
            }
            graph = rewire_to_simple(std::move(multi), rng).edges;
        }

        values[member][0] = metric_values(graph, n);
        for (std::size_t j = 1; j < snapshots; ++j) {
            const auto swaps = draw_random_swaps(m, m, rng);
            graph = apply_swaps(std::move(graph), swaps, config.run);
            values[member][j] = metric_values(graph, n);
        }
    };

    // Members draw from independent sub-streams, so the schedule cannot
    // change the result.
    const auto jobs = std::max<std::uint64_t>(1, config.jobs);
    if (jobs == 1) {
        for (std::uint64_t member = 0; member < config.ensemble_size; ++member)
            run_member(member);
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::thread> workers;
        for (std::uint64_t t = 0; t < std::min(jobs, config.ensemble_size); ++t)
            workers.emplace_back([&]() {
                for (;;) {
                    const auto member = next.fetch_add(1);
                    if (member >= config.ensemble_size)
                        return;
                    run_member(member);
                }
            });
        for (auto& w : workers)
            w.join();
    }

    EnsembleReport report;
    report.ensemble_size = config.ensemble_size;
    report.snapshots = snapshots;
    for (std::size_t metric = 0; metric < n_metrics; ++metric) {
        MetricSeries series;
        series.name = kMetricNames[metric];
        for (std::size_t j = 0; j < snapshots; ++j) {
            double sum = 0;
            for (std::uint64_t i = 0; i < config.ensemble_size; ++i)
                sum += values[i][j][metric];
            const double mean = sum / static_cast<double>(config.ensemble_size);
            double sq = 0;
            for (std::uint64_t i = 0; i < config.ensemble_size; ++i) {
                const double d = values[i][j][metric] - mean;
                sq += d * d;
            }
            const double sd = config.ensemble_size > 1
                                  ? std::sqrt(sq / static_cast<double>(config.ensemble_size - 1))
                                  : 0.0;
            series.mean.push_back(mean);
            series.stddev.push_back(sd);
        }
        series.convergence_point =
            convergence_point(series.mean, series.mean.back(), series.stddev.back());
        report.series.push_back(std::move(series));
    }
    return report;
}

} // namespace lfrgen
