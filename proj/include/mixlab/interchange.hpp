#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "mixlab/graph.hpp"
#include "mixlab/rng.hpp"

namespace mixlab {

// A deck configuration: card_at[v] is the card sitting on vertex v and
// pos_of[c] the vertex holding card c; the two stay mutually inverse.
struct DeckState {
    std::vector<int> card_at;
    std::vector<int> pos_of;

    int n() const { return int(card_at.size()); }
    bool consistent() const;
};

// Distribution over all n! permutations, indexed by Lehmer code (identity = 0).
struct PermDistribution {
    int n = 0;
    std::vector<double> p;

    bool valid(double tol = 1e-12) const;
};

struct StochasticMatrix {
    int n = 0;
    Eigen::MatrixXd a;

    bool row_stochastic(double tol = 1e-12) const;
};

DeckState identity_deck(int n);

// One lazy shuffle step: a uniform edge, then a fair swap bit, in that order.
// Returns the index of the swapped edge, or -1 when the step held still.
int step_in_place(const Graph& g, DeckState& s, Rng& rng);
DeckState step(const Graph& g, const DeckState& s, Rng& rng);
DeckState run_steps(const Graph& g, DeckState s, long long t, Rng& rng);

// Single-card transition matrix: A[u][u] = 1 - deg(u)/(2m), A[u][v] = 1/(2m)
// on edges. Symmetric.
StochasticMatrix single_card_matrix(const Graph& g);

long long factorial(int n);

int perm_index(const std::vector<int>& perm);
std::vector<int> index_perm(long long index, int n);

// Exact law of the deck after t steps from the identity. n <= 8.
PermDistribution evolve_exact(const Graph& g, long long t);

PermDistribution uniform_perm_distribution(int n);

double tv_distance(const PermDistribution& p, const PermDistribution& q);

// L2 distance to uniform: sqrt(n! * sum (p - 1/n!)^2).
double l2_distance(const PermDistribution& p);

struct MixingTimes {
    long long tau_mix = 0;  // first t with TV <= 1/4
    long long tau_l2 = 0;   // first t with L2 <= 1/2
};

MixingTimes exact_mixing_times(const Graph& g);

// TV between the single-card law (row of A^t started from the identity deck)
// and uniform on vertices; a lower bound for the full-deck TV at t.
double single_card_marginal_tv(const Graph& g, int card, long long t);

// Incremental exact evolution, for callers that need the whole distance curve
// without restarting the convolution at every t.
class ExactEvolver {
  public:
    explicit ExactEvolver(const Graph& g);

    const PermDistribution& current() const { return dist_; }
    long long t() const { return t_; }
    void advance();

  private:
    int n_;
    int m_;
    long long t_ = 0;
    PermDistribution dist_;
    std::vector<std::vector<std::int32_t>> edge_perm_;  // per edge: state -> swapped state
    std::vector<double> scratch_;
};

}  // namespace mixlab
