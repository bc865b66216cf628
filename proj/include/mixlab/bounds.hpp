#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mixlab/graph.hpp"
#include "mixlab/interchange.hpp"
#include "mixlab/rng.hpp"
#include "mixlab/spectral.hpp"

namespace mixlab {

// One chosen shortest path per unordered vertex pair. The transposition of a
// pair at hop distance r factors into 2r-1 adjacent swaps along its path; the
// last path edge is used once, every other edge twice.
struct PathSystem {
    int n = 0;
    int diameter = 0;
    std::vector<std::vector<int>> paths;  // indexed by pair_id

    static std::size_t pair_id(int u, int v, int n);
    const std::vector<int>& path(int u, int v) const;
    int rep_length(int u, int v) const;  // 2r - 1
};

PathSystem build_path_system(const Graph& g);

struct ComparisonReport {
    double a_star = 0.0;
    std::pair<int, int> argmax_edge{-1, -1};
    std::vector<double> per_edge;  // congestion profile, aligned with g.edges
    double mu_edge = 0.0;          // 1/(2m), weight of each swap generator
    double mu0_pair = 0.0;         // 1/n^2, weight of each transposition
};

// A* = max over edges x of (1/mu(x)) sum over transpositions y of
// |y| N(x,y) mu0(y), with the conventions above.
ComparisonReport congestion_a_star(const Graph& g, const PathSystem& ps);

// Coarse worst-case comparison bound 8 m rho n ln n (rho = radius).
double prop_a_bound(const Graph& g);

// Smallest t with n! e^{-floor(t/A*)} + C e^{-2c} <= 1/4 and
// floor(t/A*) >= n (ln n + c). With safety_c <= 0 the constant c is chosen
// so the second term equals 1/8. A* below 1 is clamped to 1.
long long l2_upper_time(double a_star, int n, double c_const = 1.0,
                        double safety_c = -1.0);

struct WilsonPlan {
    TestVector xi;
    double gamma = 0.0;
    double b = 0.0;
    std::vector<int> cards;  // cards starting on positive-entry vertices
    long long t = 0;         // floor(b gamma^{-1} ln n)
    double phi0 = 0.0;       // statistic at the identity deck, half the L1 norm
    double threshold = 0.0;  // half the expected statistic at time t
};

WilsonPlan wilson_plan(const Graph& g, const TestVector& xi, double gamma,
                       double b);

// phi(deck) = sum over tracked cards of xi at the card's current vertex.
double wilson_statistic(const TestVector& xi, const std::vector<int>& cards,
                        const DeckState& s);

struct WilsonMcResult {
    double tv_lower_bound = 0.0;
    double freq_chain = 0.0;    // fraction of chains above the threshold
    double freq_uniform = 0.0;  // fraction of uniform decks above it
    double standard_error = 0.0;
    double mean_phi = 0.0;
    double var_phi = 0.0;
    bool var_bound_ok = false;  // sample variance below 1
};

// Runs `reps` chains to the plan time and `reps` uniform decks; the TV lower
// bound is the frequency separation minus two binomial standard errors,
// floored at zero.
WilsonMcResult wilson_distinguisher_mc(const Graph& g, const WilsonPlan& plan,
                                       int reps, Rng& rng);

enum class WalkKind {
    kSrw,       // uniform neighbor
    kEdgeWalk,  // uniform edge, move if incident
    kCardWalk,  // uniform edge, move if incident, with probability 1/2
};

// Expected hitting time of `target` from every vertex, by one grounded
// Laplacian solve.
std::vector<double> hitting_times(const Graph& g, int target, WalkKind walk);

// Closed-form srw hitting time on trees: d(l,h)^2 plus twice the sum over
// path vertices x of |E(G_x)| d(x,h), where G_x keeps the component of x
// after removing x's path neighbors. Cross-checked against the linear solve.
double tree_hitting_srw(const Graph& tree, int l, int h);

double commute_time(const Graph& g, int u, int v, WalkKind walk);

}  // namespace mixlab
