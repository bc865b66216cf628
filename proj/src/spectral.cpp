#include "mixlab/spectral.hpp"

#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>

#include "mixlab/interchange.hpp"

namespace mixlab {

TestVector make_test_vector(Eigen::VectorXd values) {
    TestVector t;
    t.values = std::move(values);
    t.l1_norm = t.values.lpNorm<1>();
    t.l2_norm = t.values.norm();
    t.zero_sum = std::abs(t.values.sum()) <= 1e-10;
    t.normalized = std::abs(t.l2_norm - 1.0) <= 1e-10;
    return t;
}

Eigen::SparseMatrix<double> laplacian_matrix(const Graph& g) {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(std::size_t(g.n) + 2 * std::size_t(g.m));
    for (int v = 0; v < g.n; ++v) trip.emplace_back(v, v, double(g.degree(v)));
    for (auto [u, v] : g.edges) {
        trip.emplace_back(u, v, -1.0);
        trip.emplace_back(v, u, -1.0);
    }
    Eigen::SparseMatrix<double> L(g.n, g.n);
    L.setFromTriplets(trip.begin(), trip.end());
    return L;
}

double laplacian_quadratic(const Graph& g, const TestVector& xi) {
    if (xi.n() != g.n) throw DimensionMismatch("laplacian_quadratic: vector size != n");
    double sum = 0.0;
    for (auto [u, v] : g.edges) {
        double d = xi.values[u] - xi.values[v];
        sum += d * d;
    }
    return sum / (2.0 * g.m);
}

namespace {

void fix_sign(Eigen::VectorXd& x) {
    if (x.maxCoeff() < -x.minCoeff()) x = -x;
}

SpectralResult finish(const Graph& g, double kappa, Eigen::VectorXd x, const char* method) {
    // Re-project and normalize so the advertised invariants hold exactly.
    x.array() -= x.mean();
    x.normalize();
    fix_sign(x);
    Eigen::SparseMatrix<double> L = laplacian_matrix(g);
    SpectralResult r;
    r.residual = (L * x - kappa * x).norm();
    r.eigenvalue = kappa;
    r.vector = make_test_vector(std::move(x));
    r.method = method;
    return r;
}

SpectralResult fiedler_dense(const Graph& g) {
    Eigen::MatrixXd L = Eigen::MatrixXd(laplacian_matrix(g));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L);
    if (es.info() != Eigen::Success) throw NoConvergence("dense eigensolver failed");
    return finish(g, es.eigenvalues()[1], es.eigenvectors().col(1), "dense");
}

// Deterministic starting block (no rng dependency: same graph, same result).
double hash01(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return double(x >> 11) * 0x1.0p-53 - 0.5;
}

SpectralResult fiedler_iterative(const Graph& g, const FiedlerOptions& opts) {
    const int n = g.n;
    Eigen::SparseMatrix<double> L = laplacian_matrix(g);

    // Positive shift below kappa_2: a double BFS sweep bounds the diameter D
    // within a factor 2, and kappa_2 >= 4/(n D).
    DistanceTable t0 = bfs_distances(g, 0);
    int far0 = 0;
    for (int v = 0; v < n; ++v) {
        if (t0.dist[v] < 0) throw Disconnected("fiedler: graph must be connected");
        if (t0.dist[v] > t0.dist[far0]) far0 = v;
    }
    DistanceTable t1 = bfs_distances(g, far0);
    int sweep = *std::max_element(t1.dist.begin(), t1.dist.end());
    double sigma = 4.0 / (double(n) * 2.0 * std::max(1, sweep));

    Eigen::SparseMatrix<double> shifted = L;
    for (int v = 0; v < n; ++v) shifted.coeffRef(v, v) += sigma;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(shifted);
    if (solver.info() != Eigen::Success) throw NoConvergence("fiedler: factorization failed");

    const int block = 3;
    Eigen::MatrixXd X(n, block);
    for (int c = 0; c < block; ++c)
        for (int i = 0; i < n; ++i) X(i, c) = hash01(std::uint64_t(c) * n + i + 1);

    auto orthonormalize = [&](Eigen::MatrixXd& M) {
        for (int c = 0; c < M.cols(); ++c) {
            M.col(c).array() -= M.col(c).mean();  // deflate the all-ones kernel
            for (int p = 0; p < c; ++p) M.col(c) -= M.col(p).dot(M.col(c)) * M.col(p);
            double norm = M.col(c).norm();
            if (norm < 1e-300) {
                for (int i = 0; i < n; ++i) M(i, c) = hash01(std::uint64_t(c + 7) * n + i + 13);
                M.col(c).array() -= M.col(c).mean();
                for (int p = 0; p < c; ++p) M.col(c) -= M.col(p).dot(M.col(c)) * M.col(p);
                norm = M.col(c).norm();
            }
            M.col(c) /= norm;
        }
    };

    orthonormalize(X);
    for (long long it = 0; it < opts.max_iterations; ++it) {
        for (int c = 0; c < block; ++c) X.col(c) = solver.solve(X.col(c));
        orthonormalize(X);
        // Rayleigh-Ritz on the block.
        Eigen::MatrixXd LX = L * X;
        Eigen::MatrixXd small = X.transpose() * LX;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (small + small.transpose()));
        Eigen::VectorXd x = X * es.eigenvectors().col(0);
        double theta = es.eigenvalues()[0];
        double res = (L * x - theta * x).norm();
        if (res <= opts.tol) return finish(g, theta, std::move(x), "iterative");
    }
    throw NoConvergence("fiedler: iteration cap reached");
}

}  // namespace

SpectralResult fiedler(const Graph& g, const FiedlerOptions& opts) {
    if (g.n < 2) throw BadParams("fiedler: need at least 2 vertices");
    if (!is_connected(g)) throw Disconnected("fiedler: graph must be connected");
    if (g.n <= opts.dense_threshold) return fiedler_dense(g);
    return fiedler_iterative(g, opts);
}

double single_card_gap(const Graph& g, const FiedlerOptions& opts) {
    return fiedler(g, opts).eigenvalue / (2.0 * g.m);
}

L1Report l1_report(const TestVector& xi) {
    if (!xi.normalized) throw BadParams("l1_report: vector must be unit norm");
    if (xi.n() < 2) throw BadParams("l1_report: need n >= 2");
    L1Report r;
    r.l1 = xi.l1_norm;
    r.exponent = std::log(xi.l1_norm) / std::log(double(xi.n()));
    return r;
}

bool extremal_gap_check(const Graph& g, int trials, Rng& rng) {
    SpectralResult f = fiedler(g);
    double gamma = f.eigenvalue / (2.0 * g.m);
    if (std::abs(laplacian_quadratic(g, f.vector) - gamma) > 1e-8) return false;
    for (int trial = 0; trial < trials; ++trial) {
        Eigen::VectorXd x(g.n);
        for (int i = 0; i < g.n; ++i) x[i] = rng.gauss();
        x.array() -= x.mean();
        double norm = x.norm();
        if (norm < 1e-12) continue;
        x /= norm;
        if (laplacian_quadratic(g, make_test_vector(x)) < gamma - 1e-10) return false;
    }
    return true;
}

double interchange_gap_exact(const Graph& g) {
    if (g.n > 6) throw TooLarge("interchange_gap_exact capped at n = 6");
    if (!is_connected(g)) throw Disconnected("interchange_gap_exact: graph must be connected");
    const long long states = factorial(g.n);
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(states, states);
    const double swap_w = 1.0 / (2.0 * g.m);
    for (long long s = 0; s < states; ++s) {
        P(s, s) += 0.5;
        std::vector<int> perm = index_perm(s, g.n);
        for (auto [u, v] : g.edges) {
            std::swap(perm[u], perm[v]);
            P(s, perm_index(perm)) += swap_w;
            std::swap(perm[u], perm[v]);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(P, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NoConvergence("interchange operator eigensolve failed");
    return 1.0 - es.eigenvalues()[states - 2];
}

}  // namespace mixlab
