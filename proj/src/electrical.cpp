#include "mixlab/electrical.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <queue>

#include "mixlab/errors.hpp"

namespace mixlab {

namespace {

constexpr int kDirectLimit = 5000;

void check_boundary_set(const Graph& g, const std::vector<int>& set, const char* name) {
    if (set.empty()) throw BadBoundary(std::string("boundary set ") + name + " is empty");
    std::vector<char> seen(g.n, 0);
    for (int v : set) {
        if (v < 0 || v >= g.n) throw BadBoundary(std::string("boundary set ") + name + " has a vertex outside the graph");
        if (seen[v]) throw BadBoundary(std::string("boundary set ") + name + " repeats a vertex");
        seen[v] = 1;
    }
}

}  // namespace

std::vector<double> grounded_laplacian_solve(const Graph& g,
                                             const std::vector<int>& grounded,
                                             const std::vector<double>& rhs) {
    if (int(rhs.size()) != g.n) throw DimensionMismatch("grounded solve: rhs size != n");
    if (grounded.empty()) throw BadBoundary("grounded solve: grounded set is empty");
    std::vector<char> held(g.n, 0);
    for (int v : grounded) {
        if (v < 0 || v >= g.n) throw OutOfRange("grounded solve: grounded vertex outside the graph");
        held[v] = 1;
    }

    std::vector<int> local(g.n, -1);
    std::vector<int> interior;
    interior.reserve(g.n);
    for (int v = 0; v < g.n; ++v)
        if (!held[v]) {
            local[v] = int(interior.size());
            interior.push_back(v);
        }

    std::vector<double> x(g.n, 0.0);
    if (interior.empty()) return x;

    const int k = int(interior.size());
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(std::size_t(k) + 2 * std::size_t(g.m));
    Eigen::VectorXd b(k);
    for (int i = 0; i < k; ++i) {
        int v = interior[i];
        trip.emplace_back(i, i, double(g.degree(v)));
        for (int u : g.adj[v])
            if (!held[u]) trip.emplace_back(i, local[u], -1.0);
        b[i] = rhs[v];
    }
    Eigen::SparseMatrix<double> lii(k, k);
    lii.setFromTriplets(trip.begin(), trip.end());

    Eigen::VectorXd sol;
    if (k <= kDirectLimit) {
        Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(lii);
        if (solver.info() != Eigen::Success)
            throw NoConvergence("grounded solve: factorization failed");
        sol = solver.solve(b);
    } else {
        Eigen::ConjugateGradient<Eigen::SparseMatrix<double>,
                                 Eigen::Lower | Eigen::Upper,
                                 Eigen::IncompleteCholesky<double>>
            cg;
        cg.setTolerance(1e-10 / std::max(1.0, b.norm()));
        cg.setMaxIterations(std::max<long long>(100000, 4LL * k));
        cg.compute(lii);
        sol = cg.solve(b);
        if (cg.info() != Eigen::Success)
            throw NoConvergence("grounded solve: conjugate gradient did not converge");
    }
    for (int i = 0; i < k; ++i) x[interior[i]] = sol[i];
    return x;
}

PotentialSolution harmonic_potential(const Graph& g, const BoundaryCondition& bc) {
    if (g.n == 0) throw EmptyGraph("harmonic potential: empty graph");
    if (!is_connected(g)) throw Disconnected("harmonic potential: graph must be connected");
    check_boundary_set(g, bc.plus, "plus");
    check_boundary_set(g, bc.minus, "minus");
    if (!(bc.plus_value > bc.minus_value))
        throw BadBoundary("harmonic potential: plus potential must exceed minus potential");

    std::vector<char> held(g.n, 0);
    std::vector<double> value(g.n, 0.0);
    std::vector<int> grounded;
    grounded.reserve(bc.plus.size() + bc.minus.size());
    for (int v : bc.plus) {
        held[v] = 1;
        value[v] = bc.plus_value;
        grounded.push_back(v);
    }
    for (int v : bc.minus) {
        if (held[v]) throw BadBoundary("harmonic potential: plus and minus sets overlap");
        held[v] = 1;
        value[v] = bc.minus_value;
        grounded.push_back(v);
    }

    // Lift the boundary values: solve L x = -L_IB v_B on the interior, i.e.
    // rhs_u = sum of boundary-neighbor potentials of u.
    std::vector<double> rhs(g.n, 0.0);
    for (int u = 0; u < g.n; ++u) {
        if (held[u]) continue;
        for (int v : g.adj[u])
            if (held[v]) rhs[u] += value[v];
    }
    std::vector<double> eta = grounded_laplacian_solve(g, grounded, rhs);
    for (int v = 0; v < g.n; ++v)
        if (held[v]) eta[v] = value[v];

    // Interior values must interpolate the boundary and be harmonic.
    for (int u = 0; u < g.n; ++u) {
        if (held[u]) continue;
        if (eta[u] > bc.plus_value + 1e-9 || eta[u] < bc.minus_value - 1e-9)
            throw NoConvergence("harmonic potential: maximum principle violated");
        double r = g.degree(u) * eta[u];
        for (int v : g.adj[u]) r -= eta[v];
        if (std::abs(r) > 1e-9)
            throw NoConvergence("harmonic potential: interior residual above 1e-9");
    }

    PotentialSolution sol;
    sol.boundary = bc;
    Eigen::VectorXd vec(g.n);
    for (int v = 0; v < g.n; ++v) vec[v] = eta[v];
    sol.eta = make_test_vector(std::move(vec));
    double out = 0.0;
    for (int v : bc.plus)
        for (int u : g.adj[v]) out += eta[v] - eta[u];
    sol.current = out;
    if (!(sol.current > 0.0))
        throw NoConvergence("harmonic potential: no current between the boundary sets");
    sol.resistance = (bc.plus_value - bc.minus_value) / sol.current;
    return sol;
}

double effective_resistance(const Graph& g, const std::vector<int>& a,
                            const std::vector<int>& b) {
    BoundaryCondition bc;
    bc.plus = a;
    bc.minus = b;
    return harmonic_potential(g, bc).resistance;
}

TestVector centered_test_vector(const PotentialSolution& sol) {
    Eigen::VectorXd phi = sol.eta.values;
    phi.array() -= phi.mean();
    double norm = phi.norm();
    if (norm == 0.0) throw BadParams("centered test vector: potential is constant");
    phi /= norm;
    phi.array() -= phi.mean();  // recenter after the scale to keep the flag exact
    return make_test_vector(std::move(phi));
}

double gap_upper_bound(const Graph& g, const TestVector& phi) {
    if (!phi.zero_sum || !phi.normalized)
        throw NotCentered("gap upper bound: test vector must be zero-sum and unit-norm");
    return laplacian_quadratic(g, phi);
}

BoundaryCondition branch_thirds_boundary(const Graph& tree, int root) {
    if (!is_tree(tree)) throw NotATree("branch thirds: graph is not a tree");
    if (root < 0 || root >= tree.n) throw OutOfRange("branch thirds: root outside the graph");
    if (tree.degree(root) < 2) throw BadBoundary("branch thirds: root needs at least two branches");

    auto branch_leaves = [&](int child) {
        std::vector<int> leaves;
        std::vector<char> seen(tree.n, 0);
        seen[root] = 1;
        std::queue<int> q;
        q.push(child);
        seen[child] = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            if (tree.degree(v) == 1) leaves.push_back(v);
            for (int u : tree.adj[v])
                if (!seen[u]) {
                    seen[u] = 1;
                    q.push(u);
                }
        }
        std::sort(leaves.begin(), leaves.end());
        return leaves;
    };

    BoundaryCondition bc;
    bc.plus = branch_leaves(tree.adj[root].front());
    bc.minus = branch_leaves(tree.adj[root].back());
    if (bc.plus.empty() || bc.minus.empty())
        throw BadBoundary("branch thirds: a root branch has no leaves");
    return bc;
}

BoundaryCondition two_progeny_boundary(const Graph& tree, int root, int depth) {
    if (!is_tree(tree)) throw NotATree("two progeny: graph is not a tree");
    if (root < 0 || root >= tree.n) throw OutOfRange("two progeny: root outside the graph");
    if (depth < 1) throw BadParams("two progeny: depth must be at least 1");

    DistanceTable dist = bfs_distances(tree, root);
    bool level_nonempty = false;
    for (int v = 0; v < tree.n; ++v)
        if (dist.dist[v] == depth) level_nonempty = true;
    if (!level_nonempty) throw BadBoundary("two progeny: no vertices at the requested depth");

    // Orient the tree away from the root, then count, per vertex, the
    // depth-level descendants in its subtree.
    std::vector<int> parent(tree.n, -1);
    std::vector<int> order;
    order.reserve(tree.n);
    std::queue<int> q;
    q.push(root);
    parent[root] = root;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        order.push_back(v);
        for (int u : tree.adj[v])
            if (parent[u] == -1) {
                parent[u] = v;
                q.push(u);
            }
    }
    std::vector<long long> progeny(tree.n, 0);
    for (int i = tree.n - 1; i >= 0; --i) {
        int v = order[i];
        if (dist.dist[v] == depth) progeny[v] += 1;
        if (v != root) progeny[parent[v]] += progeny[v];
    }

    // First level (then smallest label) owning two children whose subtrees
    // reach the depth level.
    int pick = -1;
    for (int level = 0; level < depth && pick == -1; ++level) {
        for (int v = 0; v < tree.n; ++v) {
            if (dist.dist[v] != level) continue;
            int live_children = 0;
            for (int u : tree.adj[v])
                if (u != parent[v] && progeny[u] > 0) ++live_children;
            if (live_children >= 2 && (pick == -1 || v < pick)) pick = v;
        }
    }
    if (pick == -1)
        throw BadBoundary("two progeny: no vertex has two branches reaching the depth level");

    std::vector<std::pair<long long, int>> ranked;  // (-count, child)
    for (int u : tree.adj[pick])
        if (u != parent[pick] && progeny[u] > 0) ranked.emplace_back(-progeny[u], u);
    std::sort(ranked.begin(), ranked.end());

    auto level_under = [&](int child) {
        std::vector<int> hits;
        std::vector<char> seen(tree.n, 0);
        seen[pick] = 1;
        std::queue<int> bfs;
        bfs.push(child);
        seen[child] = 1;
        while (!bfs.empty()) {
            int v = bfs.front();
            bfs.pop();
            if (dist.dist[v] == depth) hits.push_back(v);
            for (int u : tree.adj[v])
                if (!seen[u]) {
                    seen[u] = 1;
                    bfs.push(u);
                }
        }
        std::sort(hits.begin(), hits.end());
        return hits;
    };

    BoundaryCondition bc;
    bc.plus = level_under(ranked[0].second);
    bc.minus = level_under(ranked[1].second);
    return bc;
}

}  // namespace mixlab
