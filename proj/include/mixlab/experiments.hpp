#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mixlab/graph.hpp"
#include "mixlab/rng.hpp"

namespace mixlab {

// One sweep = one family, one quantity, a size grid, and replicates per size.
// Families: path, cycle, complete, hypercube, lollipop, regular_tree,
// uniform_tree, kesten_iic, gw_tree, erdos_renyi, giant, dlp, random_regular.
// For hypercube, regular_tree, kesten_iic and gw_tree the size column is the
// dimension/depth; for giant it is the host graph size; dlp ignores sizes and
// sweeps eps_grid at the fixed vertex budget eps_n = eps * N.
// Quantities: gamma_inverse, gap_upper_bound, a_star, prop_a, wilson_time,
// mc_tv_curve, exact_tau, stick_census, unmoved_fraction.
struct SweepConfig {
    std::string family;
    std::string quantity = "gamma_inverse";
    std::vector<long long> sizes;
    int seeds = 1;
    std::uint64_t base_seed = 1;
    std::string out;

    double edge_c = 1.0;          // erdos_renyi/giant: edge probability c/n
    int degree = 3;               // random_regular degree, regular_tree branching
    double offspring_mean = 1.0;  // gw_tree offspring mean (Poisson)
    std::vector<double> eps_grid; // dlp sweep points
    long long eps_n = 120000;     // dlp budget eps * N
    double b = 0.25;              // wilson_time / mc_tv_curve plan constant
    double c_const = 1.0;         // comparison-bound constant
    double alpha = 0.5;           // stick census cutoff alpha * ln n
    double t_factor = 0.3;        // unmoved census horizon t_factor * n ln n
    int mc_reps = 400;            // mc_tv_curve replications
};

struct SweepRow {
    std::string family;
    long long n = 0;
    long long m = 0;
    std::uint64_t seed = 0;
    std::string quantity;
    double value = 0.0;
    std::string error;  // empty on success, error class otherwise
    double wall_ms = 0.0;

    bool ok() const { return error.empty(); }
};

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    int points = 0;
};

void validate(const SweepConfig& cfg);

// One graph draw of cfg.family at the given size (for dlp: eps and the
// eps_n budget; size is ignored).
Graph make_graph(const SweepConfig& cfg, long long size, double eps, Rng& rng);

// Runs every (size, seed) cell; failures become error rows and the sweep
// continues. Output is deterministic in everything but wall_ms.
std::vector<SweepRow> run_sweep(const SweepConfig& cfg);

std::string csv_string(const std::vector<SweepRow>& rows, bool include_wall = true);
void write_csv(const std::vector<SweepRow>& rows, const std::string& path,
               bool include_wall = true);

// Least squares of log y on log x.
FitResult fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys);

// Same fit over sweep rows: x = n, y = geometric mean of value across seeds
// per size. Error rows and non-positive values are skipped.
FitResult fit_exponent(const std::vector<SweepRow>& rows);

SweepConfig parse_config_text(const std::string& text);
SweepConfig load_config(const std::string& path);

// Desk-scale reproduction presets, named by the scaling statement they chase.
std::vector<std::pair<std::string, SweepConfig>> theorem_a_recipes();

// Sticks: maximal paths from a degree-1 vertex through degree-2 vertices.
// Returns how many have at least min_edges edges.
long long stick_census(const Graph& g, double min_edges);

// Fraction of cards never swapped over t steps of the shuffle.
double unmoved_fraction(const Graph& g, long long t, Rng& rng);

}  // namespace mixlab
