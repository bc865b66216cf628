#include "mixlab/generators.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <unordered_set>

namespace mixlab {

OffspringDistribution OffspringDistribution::poisson(double lambda) {
    if (!(lambda > 0.0)) throw BadParams("offspring poisson: lambda must be > 0");
    OffspringDistribution d;
    d.kind = Kind::kPoisson;
    d.lambda = lambda;
    return d;
}

OffspringDistribution OffspringDistribution::geometric(double p) {
    if (!(p > 0.0 && p <= 1.0)) throw BadParams("offspring geometric: p outside (0,1]");
    OffspringDistribution d;
    d.kind = Kind::kGeometric;
    d.p = p;
    return d;
}

OffspringDistribution OffspringDistribution::binomial(std::uint64_t trials, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw BadParams("offspring binomial: p outside [0,1]");
    OffspringDistribution d;
    d.kind = Kind::kBinomial;
    d.trials = trials;
    d.p = p;
    return d;
}

OffspringDistribution OffspringDistribution::explicit_probs(std::vector<double> probs) {
    double sum = std::accumulate(probs.begin(), probs.end(), 0.0);
    if (std::abs(sum - 1.0) > 1e-12) throw BadParams("offspring explicit: probabilities must sum to 1");
    for (double q : probs)
        if (q < 0.0) throw BadParams("offspring explicit: negative probability");
    OffspringDistribution d;
    d.kind = Kind::kExplicit;
    d.probs = std::move(probs);
    return d;
}

double OffspringDistribution::mean() const {
    switch (kind) {
        case Kind::kPoisson: return lambda;
        case Kind::kGeometric: return (1.0 - p) / p;
        case Kind::kBinomial: return double(trials) * p;
        case Kind::kExplicit: {
            double m = 0.0;
            for (std::size_t i = 0; i < probs.size(); ++i) m += double(i) * probs[i];
            return m;
        }
    }
    return 0.0;
}

double OffspringDistribution::variance() const {
    switch (kind) {
        case Kind::kPoisson: return lambda;
        case Kind::kGeometric: return (1.0 - p) / (p * p);
        case Kind::kBinomial: return double(trials) * p * (1.0 - p);
        case Kind::kExplicit: {
            double m = mean(), s = 0.0;
            for (std::size_t i = 0; i < probs.size(); ++i)
                s += (double(i) - m) * (double(i) - m) * probs[i];
            return s;
        }
    }
    return 0.0;
}

std::uint64_t OffspringDistribution::sample(Rng& rng) const {
    switch (kind) {
        case Kind::kPoisson: return rng.poisson(lambda);
        case Kind::kGeometric: return rng.geometric_ge1(p) - 1;
        case Kind::kBinomial: return rng.binomial(trials, p);
        case Kind::kExplicit: {
            double u = rng.uniform01();
            double acc = 0.0;
            for (std::size_t i = 0; i < probs.size(); ++i) {
                acc += probs[i];
                if (u < acc) return i;
            }
            return probs.size() - 1;  // guard against rounding at u ~ 1
        }
    }
    return 0;
}

Graph path_graph(int n) {
    if (n < 1) throw BadParams("path: n must be >= 1");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return from_edge_list(n, e);
}

Graph cycle_graph(int n) {
    if (n < 3) throw BadParams("cycle: n must be >= 3");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    e.emplace_back(0, n - 1);
    return from_edge_list(n, e);
}

Graph complete_graph(int n) {
    if (n < 1) throw BadParams("complete: n must be >= 1");
    std::vector<std::pair<int, int>> e;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
    return from_edge_list(n, e);
}

Graph hypercube_graph(int d) {
    if (d < 1 || d > 24) throw BadParams("hypercube: d outside 1..24");
    int n = 1 << d;
    std::vector<std::pair<int, int>> e;
    for (int x = 0; x < n; ++x)
        for (int b = 0; b < d; ++b) {
            int y = x ^ (1 << b);
            if (x < y) e.emplace_back(x, y);
        }
    return from_edge_list(n, e);
}

Graph lollipop_graph(int clique, int handle) {
    if (clique < 3) throw BadParams("lollipop: clique size must be >= 3");
    if (handle < 1) throw BadParams("lollipop: handle length must be >= 1");
    std::vector<std::pair<int, int>> e;
    for (int u = 0; u < clique; ++u)
        for (int v = u + 1; v < clique; ++v) e.emplace_back(u, v);
    for (int i = 0; i < handle; ++i) e.emplace_back(clique - 1 + i, clique + i);
    return from_edge_list(clique + handle, e);
}

Graph classic_graph(ClassicFamily family, const ClassicParams& params) {
    switch (family) {
        case ClassicFamily::kPath: return path_graph(params.n);
        case ClassicFamily::kCycle: return cycle_graph(params.n);
        case ClassicFamily::kComplete: return complete_graph(params.n);
        case ClassicFamily::kHypercube: return hypercube_graph(params.d);
        case ClassicFamily::kLollipop: return lollipop_graph(params.clique, params.handle);
    }
    throw BadParams("classic_graph: unknown family");
}

Graph regular_tree(int r, int d) {
    if (r < 3) throw BadParams("regular_tree: branching must be >= 3");
    if (d < 1) throw BadParams("regular_tree: depth must be >= 1");
    std::vector<std::pair<int, int>> e;
    std::vector<int> level{0};
    int next = 1;
    for (int depth = 0; depth < d; ++depth) {
        std::vector<int> next_level;
        int children = (depth == 0) ? r : r - 1;
        for (int v : level)
            for (int c = 0; c < children; ++c) {
                e.emplace_back(v, next);
                next_level.push_back(next++);
            }
        level = std::move(next_level);
    }
    return from_edge_list(next, e);
}

namespace {

struct GrowResult {
    std::vector<std::pair<int, int>> edges;
    int n = 1;
    int max_depth = 0;
    bool capped = false;
};

// Shared BFS tree growth: every queued vertex draws its own child count.
GrowResult grow_tree(const OffspringDistribution& off, int depth_cap, std::size_t size_cap,
                     Rng& rng) {
    GrowResult r;
    std::deque<std::pair<int, int>> queue{{0, 0}};  // (vertex, depth)
    while (!queue.empty()) {
        auto [v, depth] = queue.front();
        queue.pop_front();
        if (depth >= depth_cap) continue;
        std::uint64_t children = off.sample(rng);
        for (std::uint64_t c = 0; c < children; ++c) {
            if (std::size_t(r.n) >= size_cap) {
                r.capped = true;
                return r;
            }
            r.edges.emplace_back(v, r.n);
            queue.emplace_back(r.n, depth + 1);
            r.max_depth = std::max(r.max_depth, depth + 1);
            ++r.n;
        }
    }
    return r;
}

}  // namespace

Graph gw_tree(const OffspringDistribution& off, int depth_cap, std::size_t size_cap, Rng& rng,
              OnSizeCap on_cap) {
    if (depth_cap < 1 || size_cap < 1) throw BadParams("gw_tree: caps must be positive");
    GrowResult r = grow_tree(off, depth_cap, size_cap, rng);
    if (r.capped && on_cap == OnSizeCap::kThrow)
        throw SizeCapExceeded("gw_tree: size cap " + std::to_string(size_cap) + " hit");
    return from_edge_list(r.n, r.edges);
}

Graph gw_conditioned_to_survive(const OffspringDistribution& off, int k, ConditionMode mode,
                                Rng& rng, std::size_t rejection_budget) {
    if (k < 1) throw BadParams("gw_conditioned_to_survive: k must be >= 1");
    if (mode == ConditionMode::kRejection) {
        for (std::size_t attempt = 0; attempt < rejection_budget; ++attempt) {
            GrowResult r = grow_tree(off, k, std::size_t(1) << 40, rng);
            if (r.max_depth >= k) return from_edge_list(r.n, r.edges);
        }
        throw RejectionBudgetExceeded("gw_conditioned_to_survive: no survival in " +
                                      std::to_string(rejection_budget) + " attempts");
    }

    // Spine mode. Backbone v0..vk, side offspring thinned by the mark X_i.
    double mu = off.mean();
    std::vector<std::pair<int, int>> edges;
    int n = 1;
    int spine = 0;
    std::deque<std::pair<int, int>> side;  // roots of unconditioned side trees
    for (int i = 0; i < k; ++i) {
        double x = rng.uniform01();
        std::uint64_t extra = rng.poisson(mu * (1.0 - x));
        int next_spine = n;
        edges.emplace_back(spine, n++);
        for (std::uint64_t c = 0; c < extra; ++c) {
            edges.emplace_back(spine, n);
            side.emplace_back(n, i + 1);
            ++n;
        }
        spine = next_spine;
    }
    while (!side.empty()) {
        auto [v, depth] = side.front();
        side.pop_front();
        if (depth >= k) continue;
        std::uint64_t children = off.sample(rng);
        for (std::uint64_t c = 0; c < children; ++c) {
            edges.emplace_back(v, n);
            side.emplace_back(n, depth + 1);
            ++n;
        }
    }
    return from_edge_list(n, edges);
}

Graph kesten_iic(int d, Rng& rng) {
    if (d < 1) throw BadParams("kesten_iic: depth must be >= 1");
    std::vector<std::pair<int, int>> edges;
    int n = 1;
    int spine = 0;
    std::deque<std::pair<int, int>> side;
    for (int i = 0; i < d; ++i) {
        std::uint64_t count = 1 + rng.poisson(1.0);  // size-biased Poisson(1)
        std::uint64_t keep = rng.uniform_index(count);
        int next_spine = -1;
        for (std::uint64_t c = 0; c < count; ++c) {
            edges.emplace_back(spine, n);
            if (c == keep)
                next_spine = n;
            else
                side.emplace_back(n, i + 1);
            ++n;
        }
        spine = next_spine;
    }
    while (!side.empty()) {
        auto [v, depth] = side.front();
        side.pop_front();
        if (depth >= d) continue;
        std::uint64_t children = rng.poisson(1.0);
        for (std::uint64_t c = 0; c < children; ++c) {
            edges.emplace_back(v, n);
            side.emplace_back(n, depth + 1);
            ++n;
        }
    }
    return from_edge_list(n, edges);
}

Graph prufer_decode(const std::vector<int>& code) {
    int n = int(code.size()) + 2;
    for (int x : code)
        if (x < 0 || x >= n) throw OutOfRange("prufer_decode: entry outside 0..n-1");
    std::vector<int> degree(n, 1);
    for (int x : code) ++degree[x];
    // Smallest-leaf-first processing; a min-heap over current leaves.
    std::vector<int> heap;
    for (int v = 0; v < n; ++v)
        if (degree[v] == 1) heap.push_back(v);
    std::make_heap(heap.begin(), heap.end(), std::greater<>());
    std::vector<std::pair<int, int>> edges;
    for (int x : code) {
        std::pop_heap(heap.begin(), heap.end(), std::greater<>());
        int leaf = heap.back();
        heap.pop_back();
        edges.emplace_back(std::min(leaf, x), std::max(leaf, x));
        if (--degree[x] == 1) {
            heap.push_back(x);
            std::push_heap(heap.begin(), heap.end(), std::greater<>());
        }
    }
    std::pop_heap(heap.begin(), heap.end(), std::greater<>());
    int a = heap.back();
    heap.pop_back();
    int b = heap.front();
    edges.emplace_back(std::min(a, b), std::max(a, b));
    return from_edge_list(n, edges);
}

Graph uniform_labelled_tree(int n, Rng& rng) {
    if (n < 2) throw BadParams("uniform_labelled_tree: n must be >= 2");
    std::vector<int> code(std::size_t(std::max(0, n - 2)));
    for (int& x : code) x = int(rng.uniform_index(std::uint64_t(n)));
    return prufer_decode(code);
}

Graph erdos_renyi(long long N, double p, Rng& rng) {
    if (N < 0) throw BadParams("erdos_renyi: negative N");
    if (!(p >= 0.0 && p <= 1.0)) throw BadParams("erdos_renyi: p outside [0,1]");
    if (p == 1.0) return complete_graph(int(N));
    std::vector<std::pair<int, int>> edges;
    if (N >= 2 && p > 0.0) {
        // Walk the linearized upper triangle with geometric skips.
        const long long total = N * (N - 1) / 2;
        const double lnq = std::log1p(-p);
        long long k = -1;
        for (;;) {
            double u = rng.uniform01();
            double skip = std::floor(std::log1p(-u) / lnq);
            if (skip > 4.0e18 || k + 1 + (long long)skip < k) break;
            k += 1 + (long long)skip;
            if (k >= total) break;
            // Decode k -> (i, j): float guess for the row, integer fixup.
            long long rem = total - 1 - k;
            long long i = N - 2 - (long long)std::floor((std::sqrt(8.0 * double(rem) + 1.0) - 1.0) / 2.0);
            if (i < 0) i = 0;
            auto row_base = [&](long long r) { return r * (N - 1) - r * (r - 1) / 2; };
            while (i > 0 && row_base(i) > k) --i;
            while (row_base(i + 1) <= k && i + 1 < N - 1) ++i;
            long long j = i + 1 + (k - row_base(i));
            edges.emplace_back(int(i), int(j));
        }
    }
    return from_edge_list(int(N), edges);
}

double conjugate_mu(double eps) {
    if (!(eps > 0.0)) throw BadParams("conjugate_mu: eps must be > 0");
    const double target = (1.0 + eps) * std::exp(-(1.0 + eps));
    auto f = [&](double mu) { return mu * std::exp(-mu) - target; };
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        double val = f(mid);
        if (std::abs(val) <= 1e-13) return mid;
        if (val < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

MultiGraph configuration_multigraph(const std::vector<int>& degrees, Rng& rng) {
    long long sum = 0;
    for (int d : degrees) {
        if (d < 0) throw BadParams("configuration_multigraph: negative degree");
        sum += d;
    }
    if (sum % 2 != 0) throw OddDegreeSum("configuration_multigraph: degree sum is odd");
    std::vector<int> half;
    half.reserve(std::size_t(sum));
    for (std::size_t v = 0; v < degrees.size(); ++v)
        for (int c = 0; c < degrees[v]; ++c) half.push_back(int(v));
    // Fisher-Yates shuffle then pair consecutive slots: a uniform matching.
    for (std::size_t i = half.size(); i > 1; --i) {
        std::size_t j = std::size_t(rng.uniform_index(i));
        std::swap(half[i - 1], half[j]);
    }
    MultiGraph mg;
    mg.n = int(degrees.size());
    for (std::size_t i = 0; i + 1 < half.size(); i += 2) mg.edges.emplace_back(half[i], half[i + 1]);
    return mg;
}

DlpParams make_dlp_params(long long N, double eps) {
    if (N < 1) throw BadParams("dlp params: N must be >= 1");
    DlpParams p;
    p.N = N;
    p.eps = eps;
    p.mu = conjugate_mu(eps);
    return p;
}

DlpSample dlp_giant_detailed(const DlpParams& params, Rng& rng) {
    if (params.N < 1 || !(params.eps > 0.0)) throw BadParams("dlp_giant: bad N or eps");
    if (!(params.mu > 0.0 && params.mu < 1.0)) throw BadParams("dlp_giant: mu outside (0,1)");
    double residual = params.mu * std::exp(-params.mu) -
                      (1.0 + params.eps) * std::exp(-(1.0 + params.eps));
    if (std::abs(residual) > 1e-12) throw BadParams("dlp_giant: mu is not conjugate to 1+eps");

    const double mean = 1.0 + params.eps - params.mu;
    const double var = params.gamma_variance > 0.0 ? params.gamma_variance
                                                   : 1.0 / (params.eps * double(params.N));
    DlpSample sample;

    double gamma = rng.gauss(mean, std::sqrt(var));
    while (gamma <= 0.0) gamma = rng.gauss(mean, std::sqrt(var));  // Poisson mean must be positive
    sample.gamma_draw = gamma;

    // Stage 1: kernel degrees. Whole vector resampled until the degree->=3 sum
    // is even (exact conditional law).
    std::vector<int> kernel_deg;
    for (std::size_t attempt = 0;; ++attempt) {
        if (attempt >= 10000)
            throw RejectionBudgetExceeded("dlp_giant: parity resampling budget exhausted");
        kernel_deg.clear();
        long long degsum = 0;
        for (long long u = 0; u < params.N; ++u) {
            std::uint64_t d = rng.poisson(gamma);
            if (d >= 3) {
                kernel_deg.push_back(int(d));
                degsum += (long long)d;
            }
        }
        if (degsum % 2 != 0) continue;
        if (kernel_deg.size() < 2)
            throw DegenerateKernel("dlp_giant: kernel has fewer than 2 vertices");
        sample.kernel_degree_sum = degsum;
        break;
    }
    sample.kernel_vertices = int(kernel_deg.size());
    sample.kernel_min_degree = *std::min_element(kernel_deg.begin(), kernel_deg.end());

    MultiGraph kernel = configuration_multigraph(kernel_deg, rng);
    sample.kernel_edges = int(kernel.edges.size());

    // Stage 2: replace each kernel edge by a geometric(1-mu) path. Fresh
    // internal vertices keep subdivided parallel edges disjoint; the residual
    // collisions (a loop shorter than 3, a repeated direct edge) redraw their
    // length.
    std::vector<std::pair<int, int>> edges;
    int next = kernel.n;
    std::unordered_set<long long> direct;
    for (auto [a, b] : kernel.edges) {
        std::uint64_t len = 0;
        for (std::size_t tries = 0;; ++tries) {
            if (tries >= 1000000)
                throw RejectionBudgetExceeded("dlp_giant: subdivision resampling stuck");
            len = rng.geometric_ge1(1.0 - params.mu);
            if (a == b && len < 3) continue;
            if (a != b && len == 1) {
                long long key = (long long)std::min(a, b) * kernel.n + std::max(a, b);
                if (!direct.insert(key).second) continue;
            }
            break;
        }
        int prev = a;
        for (std::uint64_t s = 1; s < len; ++s) {
            edges.emplace_back(prev, next);
            prev = next++;
        }
        edges.emplace_back(prev, b);
    }
    sample.k_vertices = next;

    // Stage 3: a Poisson(mu) tree hangs from every vertex of K.
    std::deque<int> queue;
    for (int v = 0; v < next; ++v) queue.push_back(v);
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        std::uint64_t children = rng.poisson(params.mu);
        for (std::uint64_t c = 0; c < children; ++c) {
            edges.emplace_back(v, next);
            queue.push_back(next++);
        }
    }
    sample.assembled_vertices = next;

    Graph assembled = from_edge_list(next, edges);
    sample.giant = giant_component(assembled).graph;
    return sample;
}

Graph dlp_giant(const DlpParams& params, Rng& rng) {
    return dlp_giant_detailed(params, rng).giant;
}

Graph random_regular(int n, int r, Rng& rng, std::size_t rejection_budget) {
    if (r < 3) throw BadParams("random_regular: r must be >= 3");
    if ((long long)n * r % 2 != 0) throw OddDegreeSum("random_regular: n*r is odd");
    std::vector<int> degrees(std::size_t(n), r);
    for (std::size_t attempt = 0; attempt < rejection_budget; ++attempt) {
        MultiGraph mg = configuration_multigraph(degrees, rng);
        bool simple = true;
        std::unordered_set<long long> seen;
        for (auto [a, b] : mg.edges) {
            if (a == b) {
                simple = false;
                break;
            }
            long long key = (long long)std::min(a, b) * n + std::max(a, b);
            if (!seen.insert(key).second) {
                simple = false;
                break;
            }
        }
        if (!simple) continue;
        std::vector<std::pair<int, int>> edges;
        edges.reserve(mg.edges.size());
        for (auto [a, b] : mg.edges) edges.emplace_back(std::min(a, b), std::max(a, b));
        Graph g = from_edge_list(n, edges);
        if (is_connected(g)) return g;
    }
    throw RejectionBudgetExceeded("random_regular: no simple connected sample in " +
                                  std::to_string(rejection_budget) + " attempts");
}

}  // namespace mixlab
