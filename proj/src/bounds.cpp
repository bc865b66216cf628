#include "mixlab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <unordered_map>

#include "mixlab/electrical.hpp"
#include "mixlab/errors.hpp"

namespace mixlab {

std::size_t PathSystem::pair_id(int u, int v, int n) {
    if (u > v) std::swap(u, v);
    return std::size_t(u) * (2 * n - u - 1) / 2 + std::size_t(v - u - 1);
}

const std::vector<int>& PathSystem::path(int u, int v) const {
    if (u < 0 || v < 0 || u >= n || v >= n || u == v)
        throw OutOfRange("path system: invalid vertex pair");
    return paths[pair_id(u, v, n)];
}

int PathSystem::rep_length(int u, int v) const {
    return 2 * (int(path(u, v).size()) - 1) - 1;
}

PathSystem build_path_system(const Graph& g) {
    if (!is_connected(g)) throw Disconnected("path system: graph must be connected");
    PathSystem ps;
    ps.n = g.n;
    ps.paths.resize(std::size_t(g.n) * (g.n - 1) / 2);

    int diameter = 0;
    for (int u = 0; u < g.n; ++u) {
        DistanceTable d = bfs_distances(g, u);
        for (int v = u + 1; v < g.n; ++v) {
            diameter = std::max<int>(diameter, int(d.dist[v]));
            // Walk back from v, always through the smallest-labelled neighbor
            // one level closer; matches shortest_path's tie-break.
            std::vector<int> rev;
            rev.reserve(std::size_t(d.dist[v]) + 1);
            int w = v;
            rev.push_back(w);
            while (w != u) {
                for (int x : g.adj[w])
                    if (d.dist[x] == d.dist[w] - 1) {
                        w = x;
                        break;
                    }
                rev.push_back(w);
            }
            std::reverse(rev.begin(), rev.end());
            ps.paths[PathSystem::pair_id(u, v, g.n)] = std::move(rev);
        }
    }
    ps.diameter = diameter;
    for (int u = 0; u < g.n; ++u)
        for (int v = u + 1; v < g.n; ++v)
            if (ps.rep_length(u, v) > 2 * diameter - 1)
                throw Error("path system: representation longer than the diameter allows");
    return ps;
}

ComparisonReport congestion_a_star(const Graph& g, const PathSystem& ps) {
    if (ps.n != g.n) throw DimensionMismatch("congestion: path system built for another graph");
    std::unordered_map<long long, int> edge_id;
    edge_id.reserve(std::size_t(g.m) * 2);
    for (int e = 0; e < g.m; ++e) {
        auto [u, v] = g.edges[e];
        edge_id[(long long)u * g.n + v] = e;
    }

    ComparisonReport rep;
    rep.mu_edge = 1.0 / (2.0 * g.m);
    rep.mu0_pair = 1.0 / (double(g.n) * g.n);
    std::vector<double> load(g.m, 0.0);  // sum of |y| N(x,y) mu0(y) per edge x
    for (int u = 0; u < g.n; ++u) {
        for (int v = u + 1; v < g.n; ++v) {
            const std::vector<int>& path = ps.path(u, v);
            int r = int(path.size()) - 1;
            double len = 2.0 * r - 1.0;
            for (int i = 0; i < r; ++i) {
                int a = std::min(path[i], path[i + 1]);
                int b = std::max(path[i], path[i + 1]);
                auto it = edge_id.find((long long)a * g.n + b);
                if (it == edge_id.end())
                    throw Error("congestion: path uses a non-edge");
                double uses = (i == r - 1) ? 1.0 : 2.0;
                load[it->second] += len * uses * rep.mu0_pair;
            }
        }
    }

    rep.per_edge.resize(g.m);
    for (int e = 0; e < g.m; ++e) {
        rep.per_edge[e] = load[e] / rep.mu_edge;
        if (rep.per_edge[e] > rep.a_star) {
            rep.a_star = rep.per_edge[e];
            rep.argmax_edge = g.edges[e];
        }
    }
    return rep;
}

double prop_a_bound(const Graph& g) {
    if (g.n < 2) throw BadParams("comparison bound: need at least two vertices");
    auto [radius, diameter] = radius_diameter(g);
    (void)diameter;
    return 8.0 * g.m * radius * g.n * std::log(double(g.n));
}

long long l2_upper_time(double a_star, int n, double c_const, double safety_c) {
    if (!(a_star > 0.0)) throw BadParams("l2 upper time: congestion must be positive");
    if (n < 2) throw BadParams("l2 upper time: need at least two cards");
    double c = safety_c;
    if (c <= 0.0) {
        if (!(c_const > 0.0)) throw BadParams("l2 upper time: constant must be positive");
        c = 0.5 * std::log(8.0 * c_const);
    }
    double slack = 0.25 - c_const * std::exp(-2.0 * c);
    if (!(slack > 0.0))
        throw BadParams("l2 upper time: safety constant leaves no room under 1/4");
    double a = std::max(a_star, 1.0);
    double ln_factorial = std::lgamma(double(n) + 1.0);
    double s_needed = std::max(ln_factorial - std::log(slack),
                               n * (std::log(double(n)) + c));
    long long s = (long long)std::ceil(s_needed);
    return (long long)std::ceil(double(s) * a);
}

WilsonPlan wilson_plan(const Graph& g, const TestVector& xi, double gamma,
                       double b) {
    if (xi.n() != g.n) throw DimensionMismatch("wilson plan: vector size != n");
    if (!xi.zero_sum || !xi.normalized)
        throw BadParams("wilson plan: need a zero-sum unit-norm vector");
    if (!(gamma > 0.0 && gamma < 1.0)) throw BadParams("wilson plan: gamma outside (0,1)");
    if (!(b > 0.0)) throw BadParams("wilson plan: b must be positive");

    WilsonPlan plan;
    plan.xi = xi;
    plan.gamma = gamma;
    plan.b = b;
    for (int v = 0; v < g.n; ++v)
        if (xi.values[v] > 0.0) plan.cards.push_back(v);
    for (int c : plan.cards) plan.phi0 += xi.values[c];
    plan.t = (long long)std::floor(b * std::log(double(g.n)) / gamma);
    plan.threshold = 0.5 * std::pow(1.0 - gamma, double(plan.t)) * plan.phi0;
    return plan;
}

double wilson_statistic(const TestVector& xi, const std::vector<int>& cards,
                        const DeckState& s) {
    if (xi.n() != s.n()) throw DimensionMismatch("wilson statistic: vector size != deck size");
    double phi = 0.0;
    for (int c : cards) {
        if (c < 0 || c >= s.n()) throw OutOfRange("wilson statistic: card outside the deck");
        phi += xi.values[s.pos_of[c]];
    }
    return phi;
}

namespace {

DeckState uniform_deck(int n, Rng& rng) {
    DeckState s = identity_deck(n);
    for (int i = n - 1; i > 0; --i) {
        int j = int(rng.uniform_index(std::uint64_t(i) + 1));
        std::swap(s.card_at[i], s.card_at[j]);
    }
    for (int v = 0; v < n; ++v) s.pos_of[s.card_at[v]] = v;
    return s;
}

}  // namespace

WilsonMcResult wilson_distinguisher_mc(const Graph& g, const WilsonPlan& plan,
                                       int reps, Rng& rng) {
    if (reps < 100) throw BadParams("wilson distinguisher: need at least 100 replications");
    WilsonMcResult res;
    int above_chain = 0, above_uniform = 0;
    double sum = 0.0, sum_sq = 0.0;
    for (int r = 0; r < reps; ++r) {
        Rng chain_rng = rng.stream(2 * std::uint64_t(r));
        DeckState chain = run_steps(g, identity_deck(g.n), plan.t, chain_rng);
        double phi = wilson_statistic(plan.xi, plan.cards, chain);
        sum += phi;
        sum_sq += phi * phi;
        if (phi > plan.threshold) ++above_chain;

        Rng deck_rng = rng.stream(2 * std::uint64_t(r) + 1);
        DeckState stationary = uniform_deck(g.n, deck_rng);
        if (wilson_statistic(plan.xi, plan.cards, stationary) > plan.threshold)
            ++above_uniform;
    }
    res.freq_chain = double(above_chain) / reps;
    res.freq_uniform = double(above_uniform) / reps;
    res.standard_error = 0.5 / std::sqrt(double(reps));
    res.tv_lower_bound = std::max(
        0.0, res.freq_chain - res.freq_uniform - 2.0 * res.standard_error);
    res.mean_phi = sum / reps;
    res.var_phi = (sum_sq - sum * sum / reps) / (reps - 1);
    res.var_bound_ok = res.var_phi < 1.0;
    return res;
}

std::vector<double> hitting_times(const Graph& g, int target, WalkKind walk) {
    if (!is_connected(g)) throw Disconnected("hitting times: graph must be connected");
    if (target < 0 || target >= g.n) throw OutOfRange("hitting times: target outside the graph");
    // Conditioning on one step and clearing the holding probability leaves
    // (L h)_u = deg(u) for the srw, m for the edge walk, 2m for the card
    // walk, with h grounded at the target.
    std::vector<double> rhs(g.n);
    for (int u = 0; u < g.n; ++u) {
        switch (walk) {
            case WalkKind::kSrw: rhs[u] = double(g.degree(u)); break;
            case WalkKind::kEdgeWalk: rhs[u] = double(g.m); break;
            case WalkKind::kCardWalk: rhs[u] = 2.0 * double(g.m); break;
        }
    }
    return grounded_laplacian_solve(g, {target}, rhs);
}

double tree_hitting_srw(const Graph& tree, int l, int h) {
    if (!is_tree(tree)) throw NotATree("tree hitting time: graph is not a tree");
    if (l < 0 || l >= tree.n || h < 0 || h >= tree.n)
        throw OutOfRange("tree hitting time: vertex outside the graph");
    if (l == h) return 0.0;

    std::vector<int> path = shortest_path(tree, l, h);
    int d = int(path.size()) - 1;
    double total = double(d) * double(d);
    for (int i = 0; i < d; ++i) {  // path[d] = h contributes nothing
        int x = path[i];
        std::vector<char> blocked(tree.n, 0);
        if (i > 0) blocked[path[i - 1]] = 1;
        blocked[path[i + 1]] = 1;
        // Component of x with its path neighbors removed; a subtree, so the
        // edge count is the vertex count minus one.
        long long comp = 0;
        std::vector<char> seen(tree.n, 0);
        std::queue<int> q;
        q.push(x);
        seen[x] = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            ++comp;
            for (int u : tree.adj[v])
                if (!seen[u] && !blocked[u]) {
                    seen[u] = 1;
                    q.push(u);
                }
        }
        total += 2.0 * double(comp - 1) * double(d - i);
    }

    double solved = hitting_times(tree, h, WalkKind::kSrw)[l];
    if (std::abs(total - solved) > 1e-9 * std::max(1.0, solved))
        throw Error("tree hitting time: closed form disagrees with the linear solve");
    return total;
}

double commute_time(const Graph& g, int u, int v, WalkKind walk) {
    return hitting_times(g, v, walk)[u] + hitting_times(g, u, walk)[v];
}

}  // namespace mixlab
