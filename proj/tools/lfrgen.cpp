// lfrgen: command line front end for the streaming LFR graph toolkit.
//
// Node ids in all edge files are 0-based; text edges are `u<TAB>v` per line,
// lexicographically sorted with u <= v. Exit codes: 0 success, 2 validation
// error, 3 randomized-repair failure (defect counts on stderr).

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "lfrgen/ca/community_assignment.hpp"
#include "lfrgen/cm/configuration_model.hpp"
#include "lfrgen/em/memory.hpp"
#include "lfrgen/es/edge_switch.hpp"
#include "lfrgen/hh/havel_hakimi.hpp"
#include "lfrgen/io/graph_io.hpp"
#include "lfrgen/lfr/pipeline.hpp"
#include "lfrgen/metrics/convergence.hpp"
#include "lfrgen/metrics/graph_metrics.hpp"
#include "lfrgen/random/powerlaw.hpp"

namespace {

using namespace lfrgen;

FileFormat parse_format(const std::string& name) {
    if (name == "text")
        return FileFormat::text;
    if (name == "bin")
        return FileFormat::binary;
    throw ValidationError("unknown format: " + name);
}

struct CommonOpts {
    std::string format = "text";
    std::uint64_t memory_budget = 256ull << 20;
    std::uint64_t seed = 1;

    void attach(CLI::App* cmd, bool with_seed = true) {
        cmd->add_option("--format", format, "File format: text or bin")
            ->check(CLI::IsMember({"text", "bin"}));
        cmd->add_option("--memory-budget", memory_budget,
                        "Working memory budget in bytes");
        if (with_seed)
            cmd->add_option("--seed", seed, "Random seed");
    }

    void apply() const {
        em::MemoryContext::set_default(
            std::make_shared<em::MemoryContext>(em::MemoryBudget{memory_budget}));
    }

    FileFormat fmt() const { return parse_format(format); }
};

EdgeList shift_down(EdgeList edges) {
    for (auto& e : edges) {
        e.u -= 1;
        e.v -= 1;
    }
    return edges;
}

int run(int argc, char** argv) {
    CLI::App app{"Streaming generator for massive LFR benchmark graphs"};
    app.require_subcommand(1);

    // degrees: sample a monotonic powerlaw degree sequence.
    auto* degrees_cmd = app.add_subcommand("degrees", "Sample a powerlaw degree sequence");
    CommonOpts degrees_opts;
    std::uint64_t deg_n = 1000, deg_min = 1, deg_max = 100;
    double deg_gamma = 2.0;
    std::string degrees_out;
    degrees_cmd->add_option("--n", deg_n, "Number of values")->required();
    degrees_cmd->add_option("--dmin", deg_min, "Smallest degree (inclusive)");
    degrees_cmd->add_option("--dmax", deg_max, "Largest degree (inclusive)");
    degrees_cmd->add_option("--gamma", deg_gamma, "Powerlaw exponent");
    degrees_cmd->add_option("--output", degrees_out, "Output file (default stdout)");
    degrees_opts.attach(degrees_cmd);

    // hh: realize a degree sequence deterministically.
    auto* hh_cmd = app.add_subcommand("hh", "Realize a non-decreasing degree sequence");
    CommonOpts hh_opts;
    std::string hh_in, hh_out;
    hh_cmd->add_option("--input", hh_in, "Degree sequence file")->required();
    hh_cmd->add_option("--output", hh_out, "Edge list output (default stdout)");
    hh_opts.attach(hh_cmd, false);

    // es: randomize a graph by edge switching.
    auto* es_cmd = app.add_subcommand("es", "Randomize a graph with edge switches");
    CommonOpts es_opts;
    std::string es_in, es_out;
    double es_factor = 10.0;
    std::uint64_t es_run_size = 0;
    es_cmd->add_option("--input", es_in, "Edge list input")->required();
    es_cmd->add_option("--output", es_out, "Edge list output (default stdout)");
    es_cmd->add_option("--swaps-factor", es_factor, "Swaps per edge");
    es_cmd->add_option("--run-size", es_run_size, "Swaps per run (default m/8)");
    es_opts.attach(es_cmd);

    // cm: configuration model sample, optionally repaired to a simple graph.
    auto* cm_cmd = app.add_subcommand("cm", "Configuration model sample");
    CommonOpts cm_opts;
    std::string cm_in, cm_out;
    bool cm_repair = false;
    cm_cmd->add_option("--input", cm_in, "Degree sequence file")->required();
    cm_cmd->add_option("--output", cm_out, "Edge list output (default stdout)");
    cm_cmd->add_flag("--repair", cm_repair, "Rewire to a simple graph");
    cm_opts.attach(cm_cmd);

    // ca: constrained community assignment.
    auto* ca_cmd = app.add_subcommand("ca", "Assign nodes to communities");
    CommonOpts ca_opts;
    std::string ca_sizes, ca_degrees, ca_nu, ca_out;
    ca_cmd->add_option("--sizes", ca_sizes, "Community sizes file (non-increasing)")
        ->required();
    ca_cmd->add_option("--degrees", ca_degrees,
                       "Internal degrees file (non-increasing)")
        ->required();
    ca_cmd->add_option("--nu", ca_nu, "Memberships per node file (default all 1)");
    ca_cmd->add_option("--output", ca_out, "Assignment output (default stdout)");
    ca_opts.attach(ca_cmd);

    // lfr: the full pipeline.
    auto* lfr_cmd = app.add_subcommand("lfr", "Generate an LFR benchmark graph");
    CommonOpts lfr_opts;
    LfrParams lfr_params;
    std::string lfr_sampler = "hh";
    std::string lfr_out, lfr_truth_out, lfr_audit_out;
    lfr_cmd->add_option("--n", lfr_params.n, "Number of nodes")->required();
    lfr_cmd->add_option("--dmin", lfr_params.degree_min, "Smallest degree");
    lfr_cmd->add_option("--dmax", lfr_params.degree_max, "Largest degree");
    lfr_cmd->add_option("--gamma", lfr_params.degree_exponent, "Degree exponent");
    lfr_cmd->add_option("--smin", lfr_params.community_min, "Smallest community");
    lfr_cmd->add_option("--smax", lfr_params.community_max, "Largest community");
    lfr_cmd->add_option("--beta", lfr_params.community_exponent, "Community exponent");
    lfr_cmd->add_option("--mu", lfr_params.mixing, "Mixing parameter in (0,1)");
    lfr_cmd->add_option("--overlap-nodes", lfr_params.overlap_nodes,
                        "Nodes with nu memberships");
    lfr_cmd->add_option("--nu", lfr_params.memberships, "Memberships per overlap node");
    lfr_cmd->add_option("--sampler", lfr_sampler, "Graph sampler: hh or cm")
        ->check(CLI::IsMember({"hh", "cm"}));
    lfr_cmd->add_option("--swaps-factor", lfr_params.swaps_factor, "Swaps per edge");
    lfr_cmd->add_option("--output", lfr_out, "Edge list output (default stdout)");
    lfr_cmd->add_option("--ground-truth", lfr_truth_out, "Assignment output file");
    lfr_cmd->add_option("--audit", lfr_audit_out, "JSON-lines audit output file");
    lfr_opts.attach(lfr_cmd);

    // metrics: graph measures.
    auto* metrics_cmd = app.add_subcommand("metrics", "Compute graph measures");
    CommonOpts metrics_opts;
    std::string metrics_in, metrics_truth;
    metrics_cmd->add_option("--input", metrics_in, "Edge list input")->required();
    metrics_cmd->add_option("--ground-truth", metrics_truth,
                            "Assignment file for the mixing measure");
    metrics_opts.attach(metrics_cmd, false);

    // converge: ensemble convergence experiment, CSV output.
    auto* conv_cmd = app.add_subcommand("converge", "Ensemble convergence experiment");
    CommonOpts conv_opts;
    std::string conv_in, conv_out, conv_sampler = "hh";
    ConvergenceConfig conv_cfg;
    std::uint64_t conv_jobs = 1;
    conv_cmd->add_option("--input", conv_in, "Seed graph")->required();
    conv_cmd->add_option("--ensemble", conv_cfg.ensemble_size, "Ensemble size S");
    conv_cmd->add_option("--max-multiple", conv_cfg.max_swap_multiples,
                         "Snapshots at 0..K times m swaps");
    conv_cmd->add_option("--sampler", conv_sampler, "Member seeding: hh or cm")
        ->check(CLI::IsMember({"hh", "cm"}));
    conv_cmd->add_option("--jobs", conv_jobs, "Worker threads");
    conv_cmd->add_option("--output", conv_out, "CSV output (default stdout)");
    conv_opts.attach(conv_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const auto write_edges_to = [](const std::string& path, const EdgeList& edges,
                                   node_id n, FileFormat format) {
        if (path.empty())
            write_graph(std::cout, edges, n, format);
        else
            write_graph(std::filesystem::path(path), edges, n, format);
    };

    if (degrees_cmd->parsed()) {
        degrees_opts.apply();
        const auto seq = sample_monotonic_pld(
            deg_n, PldParams{deg_min, deg_max + 1, deg_gamma}, degrees_opts.seed);
        if (degrees_out.empty())
            write_degrees(std::cout, seq, degrees_opts.fmt());
        else
            write_degrees(std::filesystem::path(degrees_out), seq, degrees_opts.fmt());
        return 0;
    }

    if (hh_cmd->parsed()) {
        hh_opts.apply();
        const auto degrees =
            read_degrees(std::filesystem::path(hh_in), hh_opts.fmt());
        auto result = hh_edges(degrees);
        if (!result.graphical)
            std::cerr << "sequence not graphical; dropped " << result.unmet
                      << " half-edges\n";
        write_edges_to(hh_out, shift_down(std::move(result.edges)), degrees.size(),
                       hh_opts.fmt());
        return 0;
    }

    if (es_cmd->parsed()) {
        es_opts.apply();
        auto file = read_graph(std::filesystem::path(es_in), es_opts.fmt());
        const auto k = static_cast<std::uint64_t>(
            std::llround(es_factor * static_cast<double>(file.edges.size())));
        if (k > 0 && file.edges.size() >= 2) {
            const auto swaps = draw_random_swaps(file.edges.size(), k, es_opts.seed);
            file.edges = apply_swaps(std::move(file.edges), swaps,
                                     RunConfig{es_run_size});
        }
        write_edges_to(es_out, std::move(file.edges), file.n, es_opts.fmt());
        return 0;
    }

    if (cm_cmd->parsed()) {
        cm_opts.apply();
        const auto degrees = read_degrees(std::filesystem::path(cm_in), cm_opts.fmt());
        Rng rng(cm_opts.seed);
        auto edges = cm_sample(degrees, rng);
        if (cm_repair)
            edges = rewire_to_simple(std::move(edges), rng).edges;
        write_edges_to(cm_out, shift_down(std::move(edges)), degrees.size(),
                       cm_opts.fmt());
        return 0;
    }

    if (ca_cmd->parsed()) {
        ca_opts.apply();
        const auto sizes = read_degrees(std::filesystem::path(ca_sizes), ca_opts.fmt());
        const auto degrees =
            read_degrees(std::filesystem::path(ca_degrees), ca_opts.fmt());
        std::vector<std::uint64_t> nu(degrees.size(), 1);
        if (!ca_nu.empty())
            nu = read_degrees(std::filesystem::path(ca_nu), ca_opts.fmt());
        const auto assignment = assign_communities(sizes, degrees, nu, ca_opts.seed);
        if (ca_out.empty())
            write_assignment(std::cout, assignment);
        else
            write_assignment(std::filesystem::path(ca_out), assignment);
        return 0;
    }

    if (lfr_cmd->parsed()) {
        lfr_opts.apply();
        lfr_params.sampler = lfr_sampler == "cm" ? LfrParams::Sampler::cm_es
                                                 : LfrParams::Sampler::fdsm_hh;
        const auto graph = build_lfr(lfr_params, lfr_opts.seed);
        write_edges_to(lfr_out, graph.edges, lfr_params.n, lfr_opts.fmt());
        if (!lfr_truth_out.empty())
            write_assignment(std::filesystem::path(lfr_truth_out), graph.ground_truth);
        if (!lfr_audit_out.empty()) {
            std::ofstream audit(lfr_audit_out, std::ios::trunc);
            audit << graph.audit.to_json_line() << '\n';
        }
        return 0;
    }

    if (metrics_cmd->parsed()) {
        metrics_opts.apply();
        const auto file = read_graph(std::filesystem::path(metrics_in),
                                     metrics_opts.fmt());
        std::cout << "nodes\t" << file.n << '\n';
        std::cout << "edges\t" << file.edges.size() << '\n';
        std::cout << "triangles\t" << triangle_count(file.edges) << '\n';
        const auto assort = degree_assortativity(file.edges);
        if (assort)
            std::cout << "assortativity\t" << *assort << '\n';
        else
            std::cout << "assortativity\tundefined\n";
        std::cout << "clustering\t" << avg_local_clustering(file.edges, file.n) << '\n';
        if (!metrics_truth.empty()) {
            CommunityAssignment truth;
            std::ifstream in(metrics_truth);
            if (!in)
                throw ValidationError("cannot open " + metrics_truth);
            node_id node;
            community_id community;
            community_id max_c = 0;
            while (in >> node >> community) {
                truth.memberships.push_back({node, community});
                max_c = std::max(max_c, community);
            }
            truth.sizes.assign(max_c + 1, 0);
            for (const auto& m : truth.memberships)
                truth.sizes[m.community] += 1;
            std::cout << "mixing\t"
                      << realized_mixing(file.edges, truth, file.n).mean << '\n';
        }
        return 0;
    }

    if (conv_cmd->parsed()) {
        conv_opts.apply();
        conv_cfg.seeding = conv_sampler == "cm" ? EnsembleSeed::configuration_model
                                                : EnsembleSeed::shared_graph;
        conv_cfg.jobs = conv_jobs;
        const auto file = read_graph(std::filesystem::path(conv_in), conv_opts.fmt());
        const auto report = convergence_experiment(file.edges, conv_cfg, conv_opts.seed);
        if (conv_out.empty()) {
            report.write_csv(std::cout);
        } else {
            std::ofstream out(conv_out, std::ios::trunc);
            report.write_csv(out);
        }
        return 0;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const lfrgen::LasVegasFailure& e) {
        std::cerr << "repair failed: " << e.what() << " (remaining defects: "
                  << e.remaining_defects() << ")\n";
        return 3;
    } catch (const lfrgen::ValidationError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
