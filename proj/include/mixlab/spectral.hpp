#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <string>

#include "mixlab/graph.hpp"
#include "mixlab/rng.hpp"

namespace mixlab {

struct TestVector {
    Eigen::VectorXd values;
    double l1_norm = 0.0;
    double l2_norm = 0.0;
    bool zero_sum = false;    // |sum| <= 1e-10
    bool normalized = false;  // | ||.||_2 - 1 | <= 1e-10

    int n() const { return int(values.size()); }
};

TestVector make_test_vector(Eigen::VectorXd values);

struct SpectralResult {
    double eigenvalue = 0.0;  // kappa, the algebraic connectivity
    TestVector vector;
    double residual = 0.0;  // ||L x - kappa x||_2
    std::string method;     // "dense" or "iterative"
};

Eigen::SparseMatrix<double> laplacian_matrix(const Graph& g);

// Dirichlet form of the single-card chain: (1/2m) sum_edges (xi_u - xi_v)^2.
double laplacian_quadratic(const Graph& g, const TestVector& xi);

struct FiedlerOptions {
    int dense_threshold = 2000;
    double tol = 1e-8;
    long long max_iterations = 1000000;
};

// Smallest nonzero Laplacian eigenvalue with unit-norm zero-sum eigenvector,
// sign fixed so max entry >= -min entry. Dense symmetric solve up to the
// threshold, block inverse iteration with a positive shift above it.
SpectralResult fiedler(const Graph& g, const FiedlerOptions& opts = {});

// gamma = kappa / (2m).
double single_card_gap(const Graph& g, const FiedlerOptions& opts = {});

struct L1Report {
    double l1 = 0.0;
    double exponent = 0.0;  // log ||xi||_1 / log n
};

L1Report l1_report(const TestVector& xi);

// Checks gamma <= Dirichlet(xi) on random zero-sum unit vectors and equality
// at the Fiedler vector.
bool extremal_gap_check(const Graph& g, int trials, Rng& rng);

// Full n!-state interchange operator gap; n <= 6.
double interchange_gap_exact(const Graph& g);

}  // namespace mixlab
