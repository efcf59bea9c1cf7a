#include "reference_impls.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lfrgen::testing {

bool erdos_gallai_graphical(const DegreeSequence& degrees_ascending) {
    std::vector<std::uint64_t> d(degrees_ascending.rbegin(), degrees_ascending.rend());
    const std::uint64_t n = d.size();
    std::uint64_t sum = std::accumulate(d.begin(), d.end(), std::uint64_t{0});
    if (sum % 2 != 0)
        return false;
    for (std::uint64_t k = 1; k <= n; ++k) {
        std::uint64_t lhs = 0;
        for (std::uint64_t i = 0; i < k; ++i)
            lhs += d[i];
        std::uint64_t rhs = k * (k - 1);
        for (std::uint64_t i = k; i < n; ++i)
            rhs += std::min<std::uint64_t>(d[i], k);
        if (lhs > rhs)
            return false;
    }
    return true;
}

namespace {

struct NaiveGroup {
    node_id b;
    std::uint64_t n;
    std::uint64_t delta;
};

} // namespace

NaiveHhResult naive_group_hh(const DegreeSequence& degrees_ascending) {
    NaiveHhResult result;
    std::vector<NaiveGroup> groups;
    node_id next_id = 1;
    for (auto d : degrees_ascending) {
        if (!groups.empty() && groups.back().delta == d)
            groups.back().n += 1;
        else
            groups.push_back(NaiveGroup{next_id, 1, d});
        ++next_id;
    }

    const auto remaining = [&]() {
        std::uint64_t r = 0;
        for (const auto& g : groups)
            r += g.n;
        return r;
    };

    while (!groups.empty()) {
        const node_id u = groups.front().b;
        std::uint64_t demand = groups.front().delta;
        groups.front().b += 1;
        groups.front().n -= 1;
        if (groups.front().n == 0)
            groups.erase(groups.begin());

        const auto avail = remaining();
        if (demand > avail) {
            result.unmet += demand - avail;
            result.graphical = false;
            demand = avail;
        }

        // Serve from the back: whole groups first, then split the frontier
        // group and connect to its lowest ids.
        std::uint64_t need = demand;
        std::size_t j = groups.size();
        while (need > 0) {
            --j;
            if (groups[j].n <= need) {
                need -= groups[j].n;
            } else {
                const auto a = need;
                NaiveGroup first{groups[j].b, a, groups[j].delta};
                NaiveGroup second{groups[j].b + a, groups[j].n - a, groups[j].delta};
                groups[j] = second;
                groups.insert(groups.begin() + static_cast<std::ptrdiff_t>(j), first);
                need = 0;
            }
        }
        // Decrement everything from j to the end except a split's second
        // fragment, and emit the edges.
        if (demand > 0) {
            const bool split = groups[j].n != 0 && j + 1 < groups.size() &&
                               groups[j].delta == groups[j + 1].delta &&
                               groups[j].b + groups[j].n == groups[j + 1].b;
            for (node_id x = groups[j].b; x < groups[j].b + groups[j].n; ++x)
                result.edges.push_back(Edge{u, x});
            groups[j].delta -= 1;
            std::size_t k = split ? j + 2 : j + 1;
            for (; k < groups.size(); ++k) {
                for (node_id x = groups[k].b; x < groups[k].b + groups[k].n; ++x)
                    result.edges.push_back(Edge{u, x});
                groups[k].delta -= 1;
            }
        }

        // Drop empty-degree groups and merge equal neighbors.
        for (std::size_t k = 0; k < groups.size();) {
            if (groups[k].delta == 0) {
                groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(k));
                continue;
            }
            if (k > 0 && groups[k - 1].delta == groups[k].delta) {
                groups[k - 1].n += groups[k].n;
                groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(k));
                continue;
            }
            ++k;
        }

        std::vector<DegreeGroup> state;
        for (const auto& g : groups)
            state.push_back(DegreeGroup{g.b, g.n, g.delta});
        result.states.push_back(std::move(state));
    }
    return result;
}

std::uint64_t brute_force_triangles(const EdgeList& edges) {
    const auto n = node_count(edges);
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (const auto& e : edges)
        adj[e.u][e.v] = adj[e.v][e.u] = 1;
    std::uint64_t count = 0;
    for (node_id a = 0; a < n; ++a)
        for (node_id b = a + 1; b < n; ++b)
            for (node_id c = b + 1; c < n; ++c)
                if (adj[a][b] && adj[b][c] && adj[a][c])
                    ++count;
    return count;
}

double brute_force_avg_clustering(const EdgeList& edges, node_id n) {
    std::vector<std::vector<node_id>> adj(n);
    for (const auto& e : edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    std::vector<std::vector<char>> matrix(n, std::vector<char>(n, 0));
    for (const auto& e : edges)
        matrix[e.u][e.v] = matrix[e.v][e.u] = 1;

    double sum = 0;
    for (node_id v = 0; v < n; ++v) {
        const auto deg = adj[v].size();
        if (deg < 2)
            continue;
        std::uint64_t closed = 0;
        for (std::size_t i = 0; i < deg; ++i)
            for (std::size_t j = i + 1; j < deg; ++j)
                if (matrix[adj[v][i]][adj[v][j]])
                    ++closed;
        sum += static_cast<double>(closed) /
               (0.5 * static_cast<double>(deg) * static_cast<double>(deg - 1));
    }
    return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

std::optional<double> brute_force_assortativity(const EdgeList& edges) {
    const auto n = node_count(edges);
    const auto deg = degrees_of(edges, n);
    std::vector<double> xs, ys;
    for (const auto& e : edges) {
        xs.push_back(static_cast<double>(deg[e.u]));
        ys.push_back(static_cast<double>(deg[e.v]));
        xs.push_back(static_cast<double>(deg[e.v]));
        ys.push_back(static_cast<double>(deg[e.u]));
    }
    const auto k = xs.size();
    if (k == 0)
        return std::nullopt;
    const double mean_x = std::accumulate(xs.begin(), xs.end(), 0.0) / k;
    const double mean_y = std::accumulate(ys.begin(), ys.end(), 0.0) / k;
    double cov = 0, var_x = 0, var_y = 0;
    for (std::size_t i = 0; i < k; ++i) {
        cov += (xs[i] - mean_x) * (ys[i] - mean_y);
        var_x += (xs[i] - mean_x) * (xs[i] - mean_x);
        var_y += (ys[i] - mean_y) * (ys[i] - mean_y);
    }
    if (var_x <= 1e-9 || var_y <= 1e-9)
        return std::nullopt;
    return cov / std::sqrt(var_x * var_y);
}

bool chi_square_fits(const std::map<std::uint64_t, std::uint64_t>& observed,
                     const std::map<std::uint64_t, double>& expected, double alpha) {
    // Pool adjacent buckets until each expected count reaches 5.
    std::vector<std::pair<double, double>> pooled; // (observed, expected)
    double obs_acc = 0, exp_acc = 0;
    for (const auto& [value, exp] : expected) {
        auto it = observed.find(value);
        obs_acc += it == observed.end() ? 0.0 : static_cast<double>(it->second);
        exp_acc += exp;
        if (exp_acc >= 5.0) {
            pooled.emplace_back(obs_acc, exp_acc);
            obs_acc = exp_acc = 0;
        }
    }
    if (exp_acc > 0) {
        if (pooled.empty())
            pooled.emplace_back(obs_acc, exp_acc);
        else {
            pooled.back().first += obs_acc;
            pooled.back().second += exp_acc;
        }
    }
    if (pooled.size() < 2)
        return true;

    double stat = 0;
    for (const auto& [obs, exp] : pooled)
        stat += (obs - exp) * (obs - exp) / exp;
    const auto dof = pooled.size() - 1;

    // Wilson-Hilferty approximation of the chi-square quantile.
    if (alpha != 0.01)
        throw ValidationError("chi_square_fits supports alpha = 0.01 only");
    const double z = 2.3263478740408408; // 99% normal quantile
    const double k = static_cast<double>(dof);
    const double critical =
        k * std::pow(1.0 - 2.0 / (9.0 * k) + z * std::sqrt(2.0 / (9.0 * k)), 3.0);
    return stat <= critical;
}

} // namespace lfrgen::testing
