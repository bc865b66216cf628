#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mixlab/graph.hpp"
#include "mixlab/rng.hpp"

namespace mixlab {

struct OffspringDistribution {
    enum class Kind { kPoisson, kGeometric, kBinomial, kExplicit };

    Kind kind = Kind::kPoisson;
    double lambda = 0.0;          // Poisson mean
    double p = 0.0;               // Geometric success / Binomial per-trial p
    std::uint64_t trials = 0;     // Binomial trial count
    std::vector<double> probs;    // Explicit: P(children = i) = probs[i]

    static OffspringDistribution poisson(double lambda);
    static OffspringDistribution geometric(double p);  // support {0,1,...}
    static OffspringDistribution binomial(std::uint64_t trials, double p);
    static OffspringDistribution explicit_probs(std::vector<double> probs);

    double mean() const;
    double variance() const;
    std::uint64_t sample(Rng& rng) const;
};

enum class ClassicFamily { kPath, kCycle, kComplete, kHypercube, kLollipop };

struct ClassicParams {
    int n = 0;       // path / cycle / complete
    int d = 0;       // hypercube dimension
    int clique = 0;  // lollipop clique size (>= 3)
    int handle = 0;  // lollipop handle length (>= 1)
};

Graph classic_graph(ClassicFamily family, const ClassicParams& params);

Graph path_graph(int n);
Graph cycle_graph(int n);
Graph complete_graph(int n);
Graph hypercube_graph(int d);
// Complete graph on `clique` vertices with a path of `handle` edges attached
// at clique vertex clique-1.
Graph lollipop_graph(int clique, int handle);

// Root 0 has r children, every internal non-root vertex r-1, leaves at depth d.
Graph regular_tree(int r, int d);

enum class OnSizeCap { kThrow, kTruncate };

// Breadth-first sampling, children drawn per vertex; no children are added
// beyond depth_cap; the size cap either throws or freezes the tree as-is.
Graph gw_tree(const OffspringDistribution& off, int depth_cap, std::size_t size_cap,
              Rng& rng, OnSizeCap on_cap = OnSizeCap::kThrow);

enum class ConditionMode { kRejection, kSpine };

// Rejection: exact law of the depth-k-truncated tree given generation k is
// nonempty. Spine: backbone v0..vk with Poisson(mean*(1-X_i)) side offspring,
// an approximation (the exact mark law under the conditioning is not pinned
// down); side trees grow unconditioned, truncated at total depth k.
Graph gw_conditioned_to_survive(const OffspringDistribution& off, int k, ConditionMode mode,
                                Rng& rng, std::size_t rejection_budget = 100000);

// Critical Poisson(1) tree conditioned to survive: spine of length d,
// size-biased offspring 1+Poisson(1) on the spine, side trees truncated at
// total depth d.
Graph kesten_iic(int d, Rng& rng);

Graph prufer_decode(const std::vector<int>& code);

Graph uniform_labelled_tree(int n, Rng& rng);

Graph erdos_renyi(long long N, double p, Rng& rng);

// Unique root in (0,1) of mu e^{-mu} = (1+eps) e^{-(1+eps)}.
double conjugate_mu(double eps);

MultiGraph configuration_multigraph(const std::vector<int>& degrees, Rng& rng);

struct DlpParams {
    long long N = 0;             // ambient vertex count
    double eps = 0.0;            // supercriticality, > 0
    double mu = 0.0;             // conjugate of 1+eps
    double gamma_variance = 0.0; // 0 means the default 1/(eps*N)
};

DlpParams make_dlp_params(long long N, double eps);

struct DlpSample {
    Graph giant;                    // largest component of the assembled graph
    double gamma_draw = 0.0;        // realized Gamma
    int kernel_vertices = 0;        // M: vertices of degree >= 3
    long long kernel_degree_sum = 0;
    int kernel_min_degree = 0;
    int kernel_edges = 0;           // with multiplicity
    int k_vertices = 0;             // |V(K)| after subdivision
    int assembled_vertices = 0;     // before taking the largest component
};

// Three stages: degree->=3 kernel from Poisson(Gamma) degrees (parity fixed by
// resampling the degree vector), geometric(1-mu) edge subdivision, Poisson(mu)
// tree attached at every subdivided-graph vertex. Returns the largest
// component: the kernel multigraph is occasionally disconnected and the
// spectral consumers need one component.
DlpSample dlp_giant_detailed(const DlpParams& params, Rng& rng);
Graph dlp_giant(const DlpParams& params, Rng& rng);

Graph random_regular(int n, int r, Rng& rng, std::size_t rejection_budget = 100000);

}  // namespace mixlab
