#pragma once

#include <vector>

#include "mixlab/graph.hpp"
#include "mixlab/spectral.hpp"

namespace mixlab {

// Two disjoint vertex sets held at fixed potentials; every edge is a unit
// resistor.
struct BoundaryCondition {
    std::vector<int> plus;
    std::vector<int> minus;
    double plus_value = 1.0;
    double minus_value = -1.0;
};

struct PotentialSolution {
    TestVector eta;           // raw potential, in general not zero-sum
    double current = 0.0;     // net current out of the plus set
    double resistance = 0.0;  // (plus_value - minus_value) / current
    BoundaryCondition boundary;
};

// Solves L[I,I] x = rhs on the interior I = V \ grounded with x = 0 on the
// grounded set. rhs is full length; grounded entries are ignored. Direct
// factorization up to 5000 interior vertices, preconditioned CG above.
std::vector<double> grounded_laplacian_solve(const Graph& g,
                                             const std::vector<int>& grounded,
                                             const std::vector<double>& rhs);

// Dirichlet problem: harmonic off the boundary, fixed values on it. Checks
// the maximum principle and the interior harmonicity residual before
// returning.
PotentialSolution harmonic_potential(const Graph& g, const BoundaryCondition& bc);

double effective_resistance(const Graph& g, const std::vector<int>& a,
                            const std::vector<int>& b);

// phi = eta - mean(eta), scaled to unit L2 norm; zero-sum by construction.
TestVector centered_test_vector(const PotentialSolution& sol);

// Rayleigh quotient of the single-card chain at phi: an upper bound on the
// spectral gap gamma. phi must be zero-sum and unit-norm.
double gap_upper_bound(const Graph& g, const TestVector& phi);

// Boundary for rooted trees: +1 on the leaves hanging under the smallest
// child of the root, -1 on those under the largest child.
BoundaryCondition branch_thirds_boundary(const Graph& tree, int root);

// Boundary from the depth-`depth` level A of a rooted tree: walk down from
// the root (level by level, smallest label first) to the first vertex with
// two children whose subtrees both reach A; the two largest such subtrees
// give the plus and minus sets.
BoundaryCondition two_progeny_boundary(const Graph& tree, int root, int depth);

}  // namespace mixlab
