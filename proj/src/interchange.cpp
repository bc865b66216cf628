#include "mixlab/interchange.hpp"

#include <algorithm>
#include <cmath>

namespace mixlab {

bool DeckState::consistent() const {
    if (pos_of.size() != card_at.size()) return false;
    int nn = n();
    std::vector<char> seen(nn, 0);
    for (int v = 0; v < nn; ++v) {
        int c = card_at[v];
        if (c < 0 || c >= nn || seen[c]) return false;
        seen[c] = 1;
        if (pos_of[c] != v) return false;
    }
    return true;
}

bool PermDistribution::valid(double tol) const {
    double sum = 0.0;
    for (double x : p) {
        if (x < 0.0) return false;
        sum += x;
    }
    return std::abs(sum - 1.0) <= tol;
}

bool StochasticMatrix::row_stochastic(double tol) const {
    for (int i = 0; i < n; ++i) {
        double sum = 0.0;
        for (int j = 0; j < n; ++j) {
            if (a(i, j) < -tol) return false;
            sum += a(i, j);
        }
        if (std::abs(sum - 1.0) > tol) return false;
    }
    return true;
}

DeckState identity_deck(int n) {
    if (n < 1) throw BadParams("identity_deck: n must be >= 1");
    DeckState s;
    s.card_at.resize(n);
    s.pos_of.resize(n);
    for (int v = 0; v < n; ++v) {
        s.card_at[v] = v;
        s.pos_of[v] = v;
    }
    return s;
}

int step_in_place(const Graph& g, DeckState& s, Rng& rng) {
    if (s.n() != g.n) throw DimensionMismatch("step: deck size != graph size");
    if (g.m == 0) throw BadParams("step: graph has no edges");
    int e = int(rng.uniform_index(std::uint64_t(g.m)));
    bool swap = rng.fair_bit();
    if (!swap) return -1;
    auto [u, v] = g.edges[e];
    int cu = s.card_at[u], cv = s.card_at[v];
    s.card_at[u] = cv;
    s.card_at[v] = cu;
    s.pos_of[cu] = v;
    s.pos_of[cv] = u;
    return e;
}

DeckState step(const Graph& g, const DeckState& s, Rng& rng) {
    DeckState out = s;
    step_in_place(g, out, rng);
    return out;
}

DeckState run_steps(const Graph& g, DeckState s, long long t, Rng& rng) {
    for (long long i = 0; i < t; ++i) step_in_place(g, s, rng);
    return s;
}

StochasticMatrix single_card_matrix(const Graph& g) {
    if (!is_connected(g)) throw Disconnected("single_card_matrix: graph must be connected");
    StochasticMatrix sm;
    sm.n = g.n;
    sm.a = Eigen::MatrixXd::Zero(g.n, g.n);
    double off = 1.0 / (2.0 * g.m);
    for (auto [u, v] : g.edges) {
        sm.a(u, v) = off;
        sm.a(v, u) = off;
    }
    for (int u = 0; u < g.n; ++u) sm.a(u, u) = 1.0 - g.degree(u) * off;
    return sm;
}

long long factorial(int n) {
    long long f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

int perm_index(const std::vector<int>& perm) {
    int n = int(perm.size());
    std::vector<char> seen(n, 0);
    for (int x : perm) {
        if (x < 0 || x >= n || seen[x]) throw OutOfRange("perm_index: not a permutation");
        seen[x] = 1;
    }
    long long index = 0;
    for (int i = 0; i < n; ++i) {
        int smaller_later = 0;
        for (int j = i + 1; j < n; ++j)
            if (perm[j] < perm[i]) ++smaller_later;
        index = index * (n - i) + smaller_later;
    }
    return int(index);
}

std::vector<int> index_perm(long long index, int n) {
    if (n < 0 || index < 0 || index >= factorial(n))
        throw OutOfRange("index_perm: index outside 0..n!-1");
    // Peel factorial digits, then materialize by picking remaining symbols.
    std::vector<int> digits(n, 0);
    for (int i = n - 1; i >= 0; --i) {
        digits[i] = int(index % (n - i));
        index /= (n - i);
    }
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i;
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) {
        perm[i] = pool[digits[i]];
        pool.erase(pool.begin() + digits[i]);
    }
    return perm;
}

ExactEvolver::ExactEvolver(const Graph& g) : n_(g.n), m_(g.m) {
    if (g.n > 8) throw TooLarge("exact evolution capped at n = 8");
    if (!is_connected(g)) throw Disconnected("exact evolution: graph must be connected");
    long long states = factorial(n_);
    dist_.n = n_;
    dist_.p.assign(states, 0.0);
    dist_.p[0] = 1.0;  // identity
    scratch_.assign(states, 0.0);

    edge_perm_.assign(g.m, std::vector<std::int32_t>(states));
    for (long long s = 0; s < states; ++s) {
        std::vector<int> perm = index_perm(s, n_);
        for (int e = 0; e < g.m; ++e) {
            auto [u, v] = g.edges[e];
            std::swap(perm[u], perm[v]);
            edge_perm_[e][s] = perm_index(perm);
            std::swap(perm[u], perm[v]);
        }
    }
}

void ExactEvolver::advance() {
    const long long states = (long long)dist_.p.size();
    const double lazy = 0.5;
    const double swap_w = 1.0 / (2.0 * m_);
    for (long long s = 0; s < states; ++s) scratch_[s] = lazy * dist_.p[s];
    for (int e = 0; e < m_; ++e) {
        const auto& tab = edge_perm_[e];
        for (long long s = 0; s < states; ++s) scratch_[tab[s]] += swap_w * dist_.p[s];
    }
    dist_.p.swap(scratch_);
    ++t_;
}

PermDistribution evolve_exact(const Graph& g, long long t) {
    if (t < 0) throw BadParams("evolve_exact: negative time");
    ExactEvolver ev(g);
    for (long long i = 0; i < t; ++i) ev.advance();
    return ev.current();
}

PermDistribution uniform_perm_distribution(int n) {
    PermDistribution d;
    d.n = n;
    long long states = factorial(n);
    d.p.assign(states, 1.0 / double(states));
    return d;
}

double tv_distance(const PermDistribution& p, const PermDistribution& q) {
    if (p.n != q.n || p.p.size() != q.p.size())
        throw DimensionMismatch("tv_distance: distributions on different deck sizes");
    double sum = 0.0;
    for (std::size_t i = 0; i < p.p.size(); ++i) sum += std::abs(p.p[i] - q.p[i]);
    return 0.5 * sum;
}

double l2_distance(const PermDistribution& p) {
    double states = double(p.p.size());
    double uni = 1.0 / states;
    double sum = 0.0;
    for (double x : p.p) sum += (x - uni) * (x - uni);
    return std::sqrt(states * sum);
}

MixingTimes exact_mixing_times(const Graph& g) {
    ExactEvolver ev(g);
    MixingTimes out{-1, -1};
    double prev_tv = 2.0, prev_l2 = 1e300;
    const PermDistribution uni = uniform_perm_distribution(g.n);
    for (long long t = 0;; ++t) {
        double tv = tv_distance(ev.current(), uni);
        double l2 = l2_distance(ev.current());
        if (tv > prev_tv + 1e-12 || l2 > prev_l2 + 1e-12)
            throw Error("exact_mixing_times: distance curve increased");
        prev_tv = tv;
        prev_l2 = l2;
        if (out.tau_mix < 0 && tv <= 0.25) out.tau_mix = t;
        if (out.tau_l2 < 0 && l2 <= 0.5) out.tau_l2 = t;
        if (out.tau_mix >= 0 && out.tau_l2 >= 0) break;
        if (t > 2000000) throw NoConvergence("exact_mixing_times: no mixing before t = 2e6");
        ev.advance();
    }
    return out;
}

double single_card_marginal_tv(const Graph& g, int card, long long t) {
    if (card < 0 || card >= g.n) throw OutOfRange("single_card_marginal_tv: bad card");
    if (t < 0) throw BadParams("single_card_marginal_tv: negative time");
    // Work on the vertex marginal directly: one sparse multiply per step.
    std::vector<double> x(g.n, 0.0), y(g.n, 0.0);
    x[card] = 1.0;  // identity deck puts card i on vertex i
    double off = 1.0 / (2.0 * g.m);
    for (long long s = 0; s < t; ++s) {
        for (int v = 0; v < g.n; ++v) y[v] = (1.0 - g.degree(v) * off) * x[v];
        for (auto [u, v] : g.edges) {
            y[u] += off * x[v];
            y[v] += off * x[u];
        }
        x.swap(y);
    }
    double uni = 1.0 / g.n;
    double sum = 0.0;
    for (double xv : x) sum += std::abs(xv - uni);
    return 0.5 * sum;
}

}  // namespace mixlab
