#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mixlab/bounds.hpp"
#include "mixlab/electrical.hpp"
#include "mixlab/errors.hpp"
#include "mixlab/experiments.hpp"
#include "mixlab/generators.hpp"
#include "mixlab/graph.hpp"
#include "mixlab/interchange.hpp"
#include "mixlab/rng.hpp"
#include "mixlab/spectral.hpp"

namespace {

std::vector<int> parse_vertex_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stoi(item));
    return out;
}

void print_value(const char* name, double v) {
    std::printf("%s,%.12g\n", name, v);
}

int cmd_generate(const std::string& family, long long n, int d, int r,
                 double eps, long long eps_n, double edge_c, double offspring_mean,
                 std::uint64_t seed, const std::string& out) {
    mixlab::SweepConfig cfg;
    cfg.family = family;
    cfg.degree = r;
    cfg.edge_c = edge_c;
    cfg.offspring_mean = offspring_mean;
    cfg.eps_n = eps_n;
    long long size = n;
    if (family == "hypercube" || family == "regular_tree" || family == "kesten_iic" ||
        family == "gw_tree")
        size = d;
    mixlab::Rng rng(seed);
    mixlab::Graph g = mixlab::make_graph(cfg, size, eps, rng);
    if (out.empty() || out == "-") {
        std::cout << mixlab::edge_list_string(g);
    } else {
        std::ofstream file(out);
        if (!file) throw mixlab::Error("cannot open output file " + out);
        mixlab::write_edge_list(file, g);
    }
    std::fprintf(stderr, "family=%s n=%d m=%d\n", family.c_str(), g.n, g.m);
    return 0;
}

int cmd_exact(const std::string& graph_path, long long t_cap) {
    mixlab::Graph g = mixlab::read_edge_list_file(graph_path);
    mixlab::ExactEvolver ev(g);
    const mixlab::PermDistribution uniform =
        mixlab::uniform_perm_distribution(g.n);
    struct Row {
        long long t;
        double tv, l2;
    };
    std::vector<Row> rows;
    long long tau_mix = -1, tau_l2 = -1;
    for (long long t = 0; t <= t_cap; ++t) {
        if (t > 0) ev.advance();
        double tv = mixlab::tv_distance(ev.current(), uniform);
        double l2 = mixlab::l2_distance(ev.current());
        rows.push_back({t, tv, l2});
        if (tau_mix < 0 && tv <= 0.25) tau_mix = t;
        if (tau_l2 < 0 && l2 <= 0.5) tau_l2 = t;
        if (tau_mix >= 0 && tau_l2 >= 0) break;
    }
    if (tau_mix < 0 || tau_l2 < 0)
        throw mixlab::NoConvergence("exact: thresholds not reached under the step cap");
    print_value("tau_mix", double(tau_mix));
    print_value("tau_l2", double(tau_l2));
    std::printf("t,tv,l2\n");
    for (const Row& r : rows) std::printf("%lld,%.12g,%.12g\n", r.t, r.tv, r.l2);
    return 0;
}

int cmd_simulate(const std::string& graph_path, long long t, int reps,
                 std::uint64_t seed) {
    mixlab::Graph g = mixlab::read_edge_list_file(graph_path);
    mixlab::SpectralResult fr = mixlab::fiedler(g);
    double gamma = fr.eigenvalue / (2.0 * g.m);
    std::vector<int> cards;
    for (int v = 0; v < g.n; ++v)
        if (fr.vector.values[v] > 0.0) cards.push_back(v);
    double threshold = 0.0;
    for (int c : cards) threshold += fr.vector.values[c];
    threshold *= 0.5 * std::pow(1.0 - gamma, double(t));

    mixlab::Rng rng(seed);
    double sum = 0.0, sum_sq = 0.0, unmoved = 0.0;
    int above = 0;
    for (int rep = 0; rep < reps; ++rep) {
        mixlab::Rng chain_rng = rng.stream(std::uint64_t(rep));
        mixlab::DeckState s = mixlab::identity_deck(g.n);
        std::vector<char> moved(g.n, 0);
        for (long long i = 0; i < t; ++i) {
            int e = mixlab::step_in_place(g, s, chain_rng);
            if (e >= 0) {
                auto [u, v] = g.edges[e];
                moved[s.card_at[u]] = 1;
                moved[s.card_at[v]] = 1;
            }
        }
        double phi = mixlab::wilson_statistic(fr.vector, cards, s);
        sum += phi;
        sum_sq += phi * phi;
        if (phi > threshold) ++above;
        long long still = 0;
        for (int c = 0; c < g.n; ++c)
            if (!moved[c]) ++still;
        unmoved += double(still) / g.n;
    }
    double mean = sum / reps;
    double var = reps > 1 ? (sum_sq - sum * sum / reps) / (reps - 1) : 0.0;
    std::printf("n,m,t,reps,mean_phi,var_phi,threshold,freq_above,unmoved_fraction\n");
    std::printf("%d,%d,%lld,%d,%.12g,%.12g,%.12g,%.12g,%.12g\n", g.n, g.m, t, reps,
                mean, var, threshold, double(above) / reps, unmoved / reps);
    return 0;
}

int cmd_spectral(const std::string& graph_path, bool exact_interchange) {
    mixlab::Graph g = mixlab::read_edge_list_file(graph_path);
    mixlab::SpectralResult fr = mixlab::fiedler(g);
    double gamma = fr.eigenvalue / (2.0 * g.m);
    mixlab::L1Report l1 = mixlab::l1_report(fr.vector);
    std::printf("kappa,gamma,l1,exponent,residual,method\n");
    std::printf("%.12g,%.12g,%.12g,%.12g,%.3g,%s\n", fr.eigenvalue, gamma, l1.l1,
                l1.exponent, fr.residual, fr.method.c_str());
    if (exact_interchange) {
        double exact_gap = mixlab::interchange_gap_exact(g);
        print_value("interchange_gap", exact_gap);
        print_value("gap_difference", std::abs(exact_gap - gamma));
    }
    return 0;
}

int cmd_potential(const std::string& graph_path, const std::string& plus,
                  const std::string& minus, double plus_value, double minus_value) {
    mixlab::Graph g = mixlab::read_edge_list_file(graph_path);
    mixlab::BoundaryCondition bc;
    bc.plus = parse_vertex_list(plus);
    bc.minus = parse_vertex_list(minus);
    bc.plus_value = plus_value;
    bc.minus_value = minus_value;
    mixlab::PotentialSolution sol = mixlab::harmonic_potential(g, bc);
    print_value("resistance", sol.resistance);
    print_value("current", sol.current);
    std::printf("vertex,eta\n");
    for (int v = 0; v < g.n; ++v) std::printf("%d,%.12g\n", v, sol.eta.values[v]);
    return 0;
}

int cmd_bounds(const std::string& graph_path, double c_const, double b, int reps,
               std::uint64_t seed) {
    mixlab::Graph g = mixlab::read_edge_list_file(graph_path);
    mixlab::ComparisonReport cmp =
        mixlab::congestion_a_star(g, mixlab::build_path_system(g));
    double prop_a = mixlab::prop_a_bound(g);
    long long l2_t = mixlab::l2_upper_time(cmp.a_star, g.n, c_const);
    mixlab::SpectralResult fr = mixlab::fiedler(g);
    double gamma = fr.eigenvalue / (2.0 * g.m);
    mixlab::WilsonPlan plan = mixlab::wilson_plan(g, fr.vector, gamma, b);
    mixlab::Rng rng(seed);
    mixlab::WilsonMcResult mc = mixlab::wilson_distinguisher_mc(g, plan, reps, rng);
    std::printf("n,m,a_star,prop_a,l2_upper,gamma,wilson_t,threshold,mc_tv_lower\n");
    std::printf("%d,%d,%.12g,%.12g,%lld,%.12g,%lld,%.12g,%.12g\n", g.n, g.m,
                cmp.a_star, prop_a, l2_t, gamma, plan.t, plan.threshold,
                mc.tv_lower_bound);
    return 0;
}

int cmd_sweep(const std::string& preset, const std::string& config_path,
              const std::string& out, int jobs, std::uint64_t seed, bool seed_set) {
    if (jobs < 1) throw mixlab::BadParams("sweep: jobs must be at least 1");
    std::vector<mixlab::SweepConfig> configs;
    if (!preset.empty()) {
        for (auto& [name, cfg] : mixlab::theorem_a_recipes())
            if (name == preset || name.rfind(preset + "_", 0) == 0)
                configs.push_back(cfg);
        if (configs.empty())
            throw mixlab::BadParams("sweep: unknown preset " + preset);
    } else if (!config_path.empty()) {
        configs.push_back(mixlab::load_config(config_path));
    } else {
        throw mixlab::BadParams("sweep: need --preset or --config");
    }
    std::vector<mixlab::SweepRow> rows;
    for (mixlab::SweepConfig cfg : configs) {
        if (seed_set) cfg.base_seed = seed;
        std::vector<mixlab::SweepRow> part = mixlab::run_sweep(cfg);
        rows.insert(rows.end(), part.begin(), part.end());
    }
    if (out.empty() || out == "-")
        std::cout << mixlab::csv_string(rows);
    else
        mixlab::write_csv(rows, out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mixlab: interchange-shuffle mixing bounds laboratory"};
    app.require_subcommand(1);

    // generate
    std::string gen_family = "path", gen_out = "-";
    long long gen_n = 8, gen_eps_n = 120000;
    int gen_d = 3, gen_r = 3;
    double gen_eps = 0.1, gen_c = 1.0, gen_mean = 1.0;
    std::uint64_t gen_seed = 1;
    auto* gen = app.add_subcommand("generate", "emit a graph as an edge list");
    gen->add_option("--family", gen_family, "graph family")->required();
    gen->add_option("--n,--N", gen_n, "vertex count (host size for giant)");
    gen->add_option("--d", gen_d, "dimension or depth");
    gen->add_option("--r", gen_r, "degree / branching factor");
    gen->add_option("--eps", gen_eps, "supercriticality for dlp");
    gen->add_option("--eps-n", gen_eps_n, "dlp budget eps*N");
    gen->add_option("--c", gen_c, "edge probability constant c/n");
    gen->add_option("--offspring-mean", gen_mean, "offspring mean for gw_tree");
    gen->add_option("--seed", gen_seed, "rng seed");
    gen->add_option("--out", gen_out, "output file, - for stdout");

    // exact
    std::string exact_graph;
    long long exact_cap = 100000;
    auto* exact = app.add_subcommand("exact", "exact mixing times and distance curves");
    exact->add_option("--graph", exact_graph, "edge-list file")->required();
    exact->add_option("--t-cap", exact_cap, "step cap");

    // simulate
    std::string sim_graph;
    long long sim_t = 100;
    int sim_reps = 200;
    std::uint64_t sim_seed = 1;
    auto* sim = app.add_subcommand("simulate", "Monte Carlo shuffle statistics");
    sim->add_option("--graph", sim_graph, "edge-list file")->required();
    sim->add_option("--t", sim_t, "steps per chain");
    sim->add_option("--reps", sim_reps, "number of chains");
    sim->add_option("--seed", sim_seed, "rng seed");

    // spectral
    std::string spec_graph;
    bool spec_exact = false;
    auto* spec = app.add_subcommand("spectral", "algebraic connectivity and gap");
    spec->add_option("--graph", spec_graph, "edge-list file")->required();
    spec->add_flag("--exact-interchange", spec_exact, "compare with the n! operator");

    // potential
    std::string pot_graph, pot_plus, pot_minus;
    double pot_pv = 1.0, pot_mv = -1.0;
    auto* pot = app.add_subcommand("potential", "harmonic potential and resistance");
    pot->add_option("--graph", pot_graph, "edge-list file")->required();
    pot->add_option("--plus", pot_plus, "comma-separated plus set")->required();
    pot->add_option("--minus", pot_minus, "comma-separated minus set")->required();
    pot->add_option("--plus-value", pot_pv, "potential on the plus set");
    pot->add_option("--minus-value", pot_mv, "potential on the minus set");

    // bounds
    std::string bnd_graph;
    double bnd_c = 1.0, bnd_b = 0.25;
    int bnd_reps = 400;
    std::uint64_t bnd_seed = 1;
    auto* bnd = app.add_subcommand("bounds", "upper and lower mixing bounds");
    bnd->add_option("--graph", bnd_graph, "edge-list file")->required();
    bnd->add_option("--c-const", bnd_c, "comparison-bound constant C");
    bnd->add_option("--b", bnd_b, "lower-bound time constant b");
    bnd->add_option("--reps", bnd_reps, "MC replications");
    bnd->add_option("--seed", bnd_seed, "rng seed");

    // sweep
    std::string sw_preset, sw_config, sw_out = "-";
    int sw_jobs = 1;
    std::uint64_t sw_seed = 0;
    auto* sw = app.add_subcommand("sweep", "config-driven scaling sweeps");
    sw->add_option("--preset", sw_preset, "preset name or letter a..g");
    sw->add_option("--config", sw_config, "key=value config file");
    sw->add_option("--out", sw_out, "CSV output, - for stdout");
    sw->add_option("--jobs", sw_jobs, "worker count (results are worker-independent)");
    auto* sw_seed_opt = sw->add_option("--seed", sw_seed, "override base seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed())
            return cmd_generate(gen_family, gen_n, gen_d, gen_r, gen_eps, gen_eps_n,
                                gen_c, gen_mean, gen_seed, gen_out);
        if (exact->parsed()) return cmd_exact(exact_graph, exact_cap);
        if (sim->parsed()) return cmd_simulate(sim_graph, sim_t, sim_reps, sim_seed);
        if (spec->parsed()) return cmd_spectral(spec_graph, spec_exact);
        if (pot->parsed())
            return cmd_potential(pot_graph, pot_plus, pot_minus, pot_pv, pot_mv);
        if (bnd->parsed()) return cmd_bounds(bnd_graph, bnd_c, bnd_b, bnd_reps, bnd_seed);
        if (sw->parsed())
            return cmd_sweep(sw_preset, sw_config, sw_out, sw_jobs, sw_seed,
                             sw_seed_opt->count() > 0);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
