#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "mixlab/experiments.hpp"
#include "mixlab/generators.hpp"
#include "mixlab/graph.hpp"
#include "mixlab/rng.hpp"

using namespace mixlab;

TEST_CASE("loglog fit recovers synthetic exponents") {
    std::vector<double> xs = {2, 4, 8, 16, 32};
    std::vector<double> quad, constant;
    for (double x : xs) {
        quad.push_back(x * x);
        constant.push_back(3.5);
    }
    FitResult f2 = fit_loglog(xs, quad);
    CHECK(f2.slope == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(f2.r2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(f2.points == 5);

    FitResult f0 = fit_loglog(xs, constant);
    CHECK(f0.slope == doctest::Approx(0.0).scale(1).epsilon(1e-12));
    CHECK(f0.r2 == doctest::Approx(1.0).epsilon(1e-12));

    Rng rng(11);
    std::vector<double> noisy;
    for (double x : xs) noisy.push_back(std::pow(x, 2.5) * (1.0 + 0.05 * (2 * rng.uniform01() - 1)));
    FitResult f25 = fit_loglog(xs, noisy);
    CHECK(f25.slope == doctest::Approx(2.5).epsilon(0.04));

    CHECK_THROWS_AS(fit_loglog({1, 2}, {1, 4}), TooFewPoints);
    CHECK_THROWS_AS(fit_loglog({1, 2, 3}, {1, 4}), DimensionMismatch);
    CHECK_THROWS_AS(fit_loglog({1, 2, 3}, {1, -4, 9}), BadParams);
    CHECK_THROWS_AS(fit_loglog({2, 2, 2}, {1, 4, 9}), BadParams);
}

TEST_CASE("exponent fit averages seeds geometrically per size") {
    auto row = [](long long n, double value, const char* err = "") {
        SweepRow r;
        r.family = "synthetic";
        r.n = n;
        r.quantity = "gamma_inverse";
        r.value = value;
        r.error = err;
        return r;
    };
    std::vector<SweepRow> rows;
    for (long long n : {4, 8, 16, 32}) {
        double v = double(n) * double(n);
        rows.push_back(row(n, v * 3.0));
        rows.push_back(row(n, v / 3.0));  // geometric mean restores v exactly
        rows.push_back(row(n, 1e9, "TooLarge: skipped"));
        rows.push_back(row(n, -5.0));     // non-positive values are dropped
    }
    FitResult fit = fit_exponent(rows);
    CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(fit.points == 4);

    std::vector<SweepRow> scaled = rows;
    for (SweepRow& r : scaled) r.value *= 7.25;
    CHECK(fit_exponent(scaled).slope == doctest::Approx(fit.slope).epsilon(1e-12));

    std::vector<SweepRow> thin = {row(4, 16), row(8, 64), row(8, 60)};
    CHECK_THROWS_AS(fit_exponent(thin), TooFewPoints);
}

TEST_CASE("config text parses keys and validates") {
    SweepConfig cfg = parse_config_text(
        "# relaxation sweep\n"
        "family = path\n"
        "quantity = gamma_inverse\n"
        "sizes = 8,16,32\n"
        "seeds = 2\n"
        "seed = 99\n"
        "b = 0.5\n"
        "\n");
    CHECK(cfg.family == "path");
    CHECK(cfg.sizes == std::vector<long long>{8, 16, 32});
    CHECK(cfg.seeds == 2);
    CHECK(cfg.base_seed == 99);
    CHECK(cfg.b == doctest::Approx(0.5));

    auto message_of = [](auto fn) {
        try {
            fn();
        } catch (const Error& e) {
            return std::string(e.what());
        }
        return std::string("no throw");
    };

    std::string msg = message_of([] { parse_config_text("family = path\nwhat = 3\n"); });
    CHECK(msg.find("line 2") != std::string::npos);
    CHECK(msg.find("unknown key") != std::string::npos);

    msg = message_of([] { parse_config_text("family path\n"); });
    CHECK(msg.find("line 1") != std::string::npos);

    msg = message_of([] { parse_config_text("family = path\nseeds = two\n"); });
    CHECK(msg.find("line 2") != std::string::npos);
    CHECK(msg.find("bad number") != std::string::npos);

    CHECK_THROWS_AS(parse_config_text("family = moebius\nsizes = 4\n"), BadParams);
}

TEST_CASE("config validation rejects malformed sweeps") {
    SweepConfig cfg;
    cfg.family = "path";
    cfg.sizes = {8, 16};
    validate(cfg);

    SweepConfig bad = cfg;
    bad.seeds = 0;
    CHECK_THROWS_AS(validate(bad), BadParams);

    bad = cfg;
    bad.sizes = {8, 8};
    CHECK_THROWS_AS(validate(bad), BadParams);
    bad.sizes = {16, 8};
    CHECK_THROWS_AS(validate(bad), BadParams);
    bad.sizes = {};
    CHECK_THROWS_AS(validate(bad), BadParams);

    bad = cfg;
    bad.quantity = "entropy";
    CHECK_THROWS_AS(validate(bad), BadParams);

    SweepConfig dlp;
    dlp.family = "dlp";
    dlp.eps_grid = {0.05, 0.1};
    validate(dlp);
    dlp.eps_grid = {};
    CHECK_THROWS_AS(validate(dlp), BadParams);
    dlp.eps_grid = {0.05, 1.5};
    CHECK_THROWS_AS(validate(dlp), BadParams);
    dlp.eps_grid = {0.05};
    dlp.eps_n = 0;
    CHECK_THROWS_AS(validate(dlp), BadParams);

    SweepConfig mc = cfg;
    mc.quantity = "mc_tv_curve";
    mc.mc_reps = 50;
    CHECK_THROWS_AS(validate(mc), BadParams);
}

TEST_CASE("sweeps report exact relaxation times on closed forms") {
    SweepConfig cfg;
    cfg.family = "complete";
    cfg.sizes = {4, 6, 9};
    std::vector<SweepRow> rows = run_sweep(cfg);
    REQUIRE(rows.size() == 3);
    for (const SweepRow& r : rows) {
        CHECK(r.ok());
        CHECK(r.m == r.n * (r.n - 1) / 2);
        CHECK(r.value == doctest::Approx(double(r.n - 1)).epsilon(1e-9));
    }

    SweepConfig path;
    path.family = "path";
    path.sizes = {8, 16, 32, 64};
    std::vector<SweepRow> prow = run_sweep(path);
    for (const SweepRow& r : prow) {
        double kappa = 2.0 * (1.0 - std::cos(M_PI / double(r.n)));
        CHECK(r.value == doctest::Approx(2.0 * double(r.m) / kappa).epsilon(1e-9));
    }
    FitResult fit = fit_exponent(prow);
    CHECK(fit.slope > 2.8);
    CHECK(fit.slope < 3.2);
}

TEST_CASE("failed cells become error rows and the sweep continues") {
    SweepConfig cfg;
    cfg.family = "regular_tree";
    cfg.degree = 3;
    cfg.quantity = "exact_tau";
    cfg.sizes = {1, 2};  // depth 1 has 4 vertices, depth 2 already has 10
    std::vector<SweepRow> rows = run_sweep(cfg);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].ok());
    CHECK(rows[0].n == 4);
    CHECK(!rows[1].ok());
    CHECK(rows[1].error.rfind("TooLarge", 0) == 0);

    std::string csv = csv_string(rows, false);
    CHECK(csv.find("TooLarge") != std::string::npos);
}

TEST_CASE("csv output is stable and schema-fixed") {
    SweepConfig cfg;
    cfg.family = "uniform_tree";
    cfg.sizes = {16, 24};
    cfg.seeds = 3;
    cfg.base_seed = 5;
    std::vector<SweepRow> a = run_sweep(cfg);
    std::vector<SweepRow> b = run_sweep(cfg);
    CHECK(csv_string(a, false) == csv_string(b, false));

    std::string with_wall = csv_string(a, true);
    CHECK(with_wall.rfind("family,n,m,seed,quantity,value,error,wall_ms\n", 0) == 0);
    CHECK(csv_string(a, false).rfind("family,n,m,seed,quantity,value,error\n", 0) == 0);

    SweepConfig other = cfg;
    other.base_seed = 6;
    CHECK(csv_string(run_sweep(other), false) != csv_string(a, false));
}

TEST_CASE("graph dispatch covers every family") {
    SweepConfig cfg;
    Rng rng(17);

    cfg.family = "hypercube";
    Graph h = make_graph(cfg, 3, 0, rng);
    CHECK(h.n == 8);
    CHECK(h.m == 12);

    cfg.family = "lollipop";
    Graph l = make_graph(cfg, 7, 0, rng);
    CHECK(l.n == 7);
    CHECK(l.m == 4 * 3 / 2 + 3);

    cfg.family = "regular_tree";
    cfg.degree = 3;
    CHECK(make_graph(cfg, 2, 0, rng).n == 10);

    cfg.family = "giant";
    cfg.edge_c = 1.5;
    Graph giant = make_graph(cfg, 4000, 0, rng);
    CHECK(is_connected(giant));
    CHECK(giant.n > 1000);

    cfg.family = "dlp";
    cfg.eps_n = 4000;
    Graph dlp = make_graph(cfg, 0, 0.1, rng);
    CHECK(is_connected(dlp));
    CHECK(dlp.n > 100);

    cfg.family = "random_regular";
    Graph reg = make_graph(cfg, 50, 0, rng);
    for (int v = 0; v < reg.n; ++v) CHECK(reg.degree(v) == 3);

    cfg.family = "nonesuch";
    CHECK_THROWS_AS(make_graph(cfg, 8, 0, rng), BadParams);
}

TEST_CASE("named recipes cover every scaling target") {
    auto presets = theorem_a_recipes();
    REQUIRE(presets.size() == 9);
    std::vector<std::string> names;
    for (auto& [name, cfg] : presets) {
        names.push_back(name);
        validate(cfg);
    }
    CHECK(names == std::vector<std::string>{
                       "a_regular_tree", "b_uniform_tree", "b_kesten", "c_critical_giant",
                       "d_dlp_giant", "e_stick_census", "f_congestion", "f_unmoved_census",
                       "g_hypercube"});

    SweepConfig g = presets.back().second;
    std::vector<SweepRow> rows = run_sweep(g);
    REQUIRE(rows.size() == 6);
    std::vector<double> expect = {12, 32, 80, 192, 448, 1024};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].ok());
        CHECK(rows[i].n == (1LL << (i + 3)));
        CHECK(rows[i].value == doctest::Approx(expect[i]).epsilon(1e-9));
    }
}

TEST_CASE("stick census counts degree-one path tails") {
    // Spider: legs of 1, 2 and 3 edges hanging off vertex 0.
    Graph spider = from_edge_list(7, {{0, 1}, {0, 2}, {2, 3}, {0, 4}, {4, 5}, {5, 6}});
    CHECK(stick_census(spider, 1) == 3);
    CHECK(stick_census(spider, 2) == 2);
    CHECK(stick_census(spider, 3) == 1);
    CHECK(stick_census(spider, 3.5) == 0);

    Graph p5 = path_graph(5);
    CHECK(stick_census(p5, 4) == 2);  // both ends see the same maximal path
    CHECK(stick_census(p5, 4.1) == 0);

    CHECK(stick_census(complete_graph(4), 1) == 0);
    CHECK(stick_census(lollipop_graph(4, 3), 3) == 1);
    CHECK(stick_census(lollipop_graph(4, 3), 4) == 0);
}

TEST_CASE("unmoved fraction tracks inactivity of the shuffle") {
    Rng rng(23);
    Graph k2 = path_graph(2);
    CHECK(unmoved_fraction(k2, 0, rng) == 1.0);

    int never = 0;
    const int reps = 3000;
    for (int i = 0; i < reps; ++i) {
        Rng child = rng.stream(i);
        double f = unmoved_fraction(k2, 3, child);
        CHECK((f == 0.0 || f == 1.0));
        if (f == 1.0) ++never;
    }
    double phat = double(never) / reps;
    CHECK(phat == doctest::Approx(0.125).epsilon(0.25));  // (1/2)^3 within 5 sigma

    Graph ring = cycle_graph(12);
    double big_t = unmoved_fraction(ring, 4000, rng);
    CHECK(big_t <= 1.0 / 12 + 1e-12);

    CHECK_THROWS_AS(unmoved_fraction(ring, -1, rng), BadParams);
}

TEST_CASE("monte carlo quantities flow through the sweep") {
    SweepConfig cfg;
    cfg.family = "complete";
    cfg.quantity = "mc_tv_curve";
    cfg.sizes = {4, 5};
    cfg.mc_reps = 200;
    cfg.base_seed = 3;
    std::vector<SweepRow> rows = run_sweep(cfg);
    for (const SweepRow& r : rows) {
        CHECK(r.ok());
        CHECK(r.value >= 0.0);
        CHECK(r.value <= 1.0);
    }

    SweepConfig wt;
    wt.family = "path";
    wt.quantity = "wilson_time";
    wt.sizes = {8, 16, 32};
    std::vector<SweepRow> wrows = run_sweep(wt);
    CHECK(wrows[0].value == doctest::Approx(47.0));
    CHECK(wrows[1].value > wrows[0].value);
    CHECK(wrows[2].value > wrows[1].value);
}
