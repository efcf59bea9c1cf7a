#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "lfrgen/es/edge_switch.hpp"
#include "lfrgen/graph.hpp"

namespace lfrgen {

/// How ensemble members are seeded before the swap trajectories start.
enum class EnsembleSeed {
    shared_graph,        ///< every member starts from the given graph
    configuration_model, ///< members are re-sampled from its degree sequence
                         ///< via the configuration model plus repair
};

/// Per-metric trajectory statistics across an ensemble of swap sequences.
struct MetricSeries {
    std::string name;
    std::vector<double> mean;   ///< one entry per snapshot (j * m swaps)
    std::vector<double> stddev; ///< unbiased estimate across members
    /// First snapshot whose mean lies within half the final standard
    /// deviation of the final mean and stays there for >= 3 snapshots.
    std::optional<std::size_t> convergence_point;
};

struct EnsembleReport {
    std::uint64_t ensemble_size = 0;
    std::uint64_t snapshots = 0; ///< K + 1 including the seed snapshot
    std::vector<MetricSeries> series;

    const MetricSeries* find(const std::string& name) const;

    /// CSV rows: metric,snapshot_swaps_per_m,mean,stddev,S
    void write_csv(std::ostream& out) const;
};

struct ConvergenceConfig {
    std::uint64_t ensemble_size = 20; ///< S
    std::uint64_t max_swap_multiples = 10; ///< K: snapshots at 0, m, ..., Km swaps
    EnsembleSeed seeding = EnsembleSeed::shared_graph;
    RunConfig run{};
    std::uint64_t jobs = 1; ///< worker threads over ensemble members; the
                            ///< result is independent of the thread count
};

/// Runs S independent swap trajectories from a common seed graph, snapshots
/// every m swaps, and reports per-snapshot metric means and deviations plus
/// the convergence point of each metric. Metrics: triangles, degree
/// assortativity, average local clustering.
EnsembleReport convergence_experiment(const EdgeList& seed_graph,
                                      const ConvergenceConfig& config,
                                      std::uint64_t seed);

} // namespace lfrgen
