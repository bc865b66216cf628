#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mixlab/generators.hpp"
#include "mixlab/interchange.hpp"
#include "mixlab/rng.hpp"
#include "mixlab/spectral.hpp"
#include "support/enumerate.hpp"

using namespace mixlab;
namespace mt = mixlab::testing;

namespace {

TestVector random_zero_sum_unit(int n, Rng& rng) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = rng.gauss();
    v.array() -= v.mean();
    v /= v.norm();
    return make_test_vector(v);
}

double path_kappa(int n) { return 2.0 * (1.0 - std::cos(std::numbers::pi / n)); }

}  // namespace

TEST_CASE("test vector caches norms and flags") {
    Eigen::VectorXd v(3);
    v << 1, 0, -1;
    v /= std::sqrt(2.0);
    TestVector xi = make_test_vector(v);
    CHECK(xi.l1_norm == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(xi.l2_norm == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(xi.zero_sum);
    CHECK(xi.normalized);

    Eigen::VectorXd w(2);
    w << 3, 1;
    TestVector eta = make_test_vector(w);
    CHECK_FALSE(eta.zero_sum);
    CHECK_FALSE(eta.normalized);
    CHECK(eta.l1_norm == doctest::Approx(4.0));
}

TEST_CASE("laplacian matrix of a path") {
    Eigen::MatrixXd l = Eigen::MatrixXd(laplacian_matrix(mt::path_graph(3)));
    Eigen::MatrixXd expect(3, 3);
    expect << 1, -1, 0, -1, 2, -1, 0, -1, 1;
    CHECK((l - expect).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("dirichlet form values and matrix identity") {
    Graph p3 = mt::path_graph(3);
    TestVector constant = make_test_vector(Eigen::VectorXd::Ones(3));
    CHECK(laplacian_quadratic(p3, constant) == 0.0);

    Eigen::VectorXd v(3);
    v << 1, 0, -1;
    v /= std::sqrt(2.0);
    CHECK(laplacian_quadratic(p3, make_test_vector(v)) == doctest::Approx(0.25).epsilon(1e-14));

    CHECK_THROWS_AS(laplacian_quadratic(p3, make_test_vector(Eigen::VectorXd::Ones(4))),
                    DimensionMismatch);

    // Against the explicit quadratic form xi' (I - A) xi.
    Rng rng(3);
    for (int rep = 0; rep < 100; ++rep) {
        int n = 2 + int(rng.uniform_index(199));
        Graph g = erdos_renyi(n, 0.3, rng);
        if (!is_connected(g)) continue;
        StochasticMatrix a = single_card_matrix(g);
        Eigen::VectorXd x(n);
        for (int i = 0; i < n; ++i) x[i] = rng.gauss();
        TestVector xi = make_test_vector(x);
        double direct = x.dot((Eigen::MatrixXd::Identity(n, n) - a.a) * x);
        CHECK(laplacian_quadratic(g, xi) == doctest::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("fiedler eigenpairs on closed-form graphs") {
    SpectralResult p3 = fiedler(mt::path_graph(3));
    CHECK(p3.eigenvalue == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(p3.vector.values[0]) == doctest::Approx(1.0 / std::sqrt(2)).epsilon(1e-8));
    CHECK(std::abs(p3.vector.values[1]) == doctest::Approx(0.0).epsilon(1e-8));
    CHECK(p3.vector.values[0] * p3.vector.values[2] < 0);
    CHECK(p3.method == "dense");

    CHECK(fiedler(mt::complete_graph(4)).eigenvalue == doctest::Approx(4.0).epsilon(1e-10));
    CHECK(fiedler(hypercube_graph(3)).eigenvalue == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(fiedler(mt::star_graph(6)).eigenvalue == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(fiedler(mt::path_graph(10)).eigenvalue ==
          doctest::Approx(path_kappa(10)).epsilon(1e-10));
    CHECK(fiedler(mt::cycle_graph(12)).eigenvalue ==
          doctest::Approx(2.0 * (1.0 - std::cos(2 * std::numbers::pi / 12))).epsilon(1e-10));

    CHECK_THROWS_AS(fiedler(from_edge_list(4, {{0, 1}, {2, 3}})), Disconnected);
}

TEST_CASE("fiedler vector satisfies the eigen equation and conventions") {
    Rng rng(11);
    for (int rep = 0; rep < 20; ++rep) {
        Graph g = erdos_renyi(40, 0.15, rng);
        if (!is_connected(g)) continue;
        SpectralResult r = fiedler(g);
        CHECK(r.residual <= 1e-8);
        CHECK(r.vector.zero_sum);
        CHECK(r.vector.normalized);
        CHECK(r.vector.values.maxCoeff() >= -r.vector.values.minCoeff());

        // The scaled vector is an eigenvector of the single-card chain.
        StochasticMatrix a = single_card_matrix(g);
        double gamma = r.eigenvalue / (2.0 * g.m);
        Eigen::VectorXd lhs = a.a * r.vector.values;
        Eigen::VectorXd rhs = (1.0 - gamma) * r.vector.values;
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-8);
    }
}

TEST_CASE("iterative and dense fiedler agree") {
    FiedlerOptions force_iterative;
    force_iterative.dense_threshold = 1;
    for (const Graph& g : {mt::path_graph(40), mt::cycle_graph(33), hypercube_graph(4),
                           regular_tree(3, 3)}) {
        SpectralResult dense = fiedler(g);
        SpectralResult iter = fiedler(g, force_iterative);
        CHECK(dense.method == "dense");
        CHECK(iter.method == "iterative");
        CHECK(iter.eigenvalue == doctest::Approx(dense.eigenvalue).epsilon(1e-8));
        CHECK(iter.residual <= 1e-8);
    }

    Rng rng(13);
    Graph big = uniform_labelled_tree(3000, rng);  // above the dense threshold
    SpectralResult r = fiedler(big);
    CHECK(r.method == "iterative");
    CHECK(r.residual <= 1e-8);
}

TEST_CASE("single card gap from the laplacian") {
    CHECK(single_card_gap(mt::path_graph(3)) == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(single_card_gap(mt::complete_graph(4)) == doctest::Approx(1.0 / 3).epsilon(1e-10));
    CHECK(single_card_gap(hypercube_graph(3)) == doctest::Approx(1.0 / 12).epsilon(1e-10));
}

TEST_CASE("l1 report norms and the path exponent band") {
    Eigen::VectorXd v(3);
    v << 1, 0, -1;
    v /= std::sqrt(2.0);
    L1Report r = l1_report(make_test_vector(v));
    CHECK(r.l1 == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

    int n = 64;
    Eigen::VectorXd pm(n);
    for (int i = 0; i < n; ++i) pm[i] = (i % 2 ? 1.0 : -1.0) / std::sqrt(double(n));
    CHECK(l1_report(make_test_vector(pm)).l1 == doctest::Approx(std::sqrt(double(n))).epsilon(1e-12));

    // Cosine-profile Fiedler vectors of paths have l1 = Theta(sqrt(n)).
    for (int size : {16, 64, 256, 1024}) {
        L1Report rep = l1_report(fiedler(mt::path_graph(size)).vector);
        CHECK(rep.exponent > 0.45);
        CHECK(rep.exponent < 0.55);
    }
}

TEST_CASE("gap is extremal for the dirichlet form") {
    Rng rng(17);
    for (const Graph& g : {mt::path_graph(6), mt::cycle_graph(7), mt::complete_graph(5),
                           mt::star_graph(8)}) {
        CHECK(extremal_gap_check(g, 50, rng));
        double gamma = single_card_gap(g);
        for (int rep = 0; rep < 20; ++rep) {
            TestVector xi = random_zero_sum_unit(g.n, rng);
            CHECK(laplacian_quadratic(g, xi) >= gamma - 1e-10);
        }
    }
}

TEST_CASE("interchange operator gap equals the single card gap") {
    CHECK(interchange_gap_exact(mt::complete_graph(3)) == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(interchange_gap_exact(mt::path_graph(3)) == doctest::Approx(0.25).epsilon(1e-10));

    for (const Graph& g : mt::connected_iso_classes(4))
        CHECK(interchange_gap_exact(g) == doctest::Approx(single_card_gap(g)).epsilon(1e-8));

    CHECK_THROWS_AS(interchange_gap_exact(mt::path_graph(7)), TooLarge);
}

TEST_CASE("adding an edge never decreases connectivity") {
    Rng rng(23);
    for (int rep = 0; rep < 5; ++rep) {
        Graph tree = uniform_labelled_tree(9, rng);
        auto edges = tree.edges;
        double prev = fiedler(tree).eigenvalue;
        for (int u = 0; u < 9; ++u)
            for (int v = u + 1; v < 9; ++v) {
                if (std::find(edges.begin(), edges.end(), std::pair<int, int>{u, v}) !=
                    edges.end())
                    continue;
                edges.emplace_back(u, v);
                double next = fiedler(from_edge_list(9, edges)).eigenvalue;
                CHECK(next >= prev - 1e-10);
                prev = next;
            }
    }
}
