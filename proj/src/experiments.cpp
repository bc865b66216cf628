#include "mixlab/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "mixlab/bounds.hpp"
#include "mixlab/electrical.hpp"
#include "mixlab/errors.hpp"
#include "mixlab/generators.hpp"
#include "mixlab/interchange.hpp"
#include "mixlab/spectral.hpp"

namespace mixlab {

namespace {

const std::vector<std::string>& family_names() {
    static const std::vector<std::string> names = {
        "path",       "cycle",      "complete",    "hypercube", "lollipop",
        "regular_tree", "uniform_tree", "kesten_iic", "gw_tree",  "erdos_renyi",
        "giant",      "dlp",        "random_regular"};
    return names;
}

const std::vector<std::string>& quantity_names() {
    static const std::vector<std::string> names = {
        "gamma_inverse", "gap_upper_bound", "a_star",
        "prop_a",        "wilson_time",     "mc_tv_curve",
        "exact_tau",     "stick_census",    "unmoved_fraction"};
    return names;
}

bool known(const std::vector<std::string>& names, const std::string& s) {
    return std::find(names.begin(), names.end(), s) != names.end();
}

struct SweepPoint {
    long long size = 0;
    double eps = 0.0;
};

std::vector<SweepPoint> sweep_points(const SweepConfig& cfg) {
    std::vector<SweepPoint> pts;
    if (cfg.family == "dlp") {
        for (double e : cfg.eps_grid) pts.push_back({0, e});
    } else {
        for (long long s : cfg.sizes) pts.push_back({s, 0.0});
    }
    return pts;
}

int farthest_from(const Graph& g, int s) {
    DistanceTable dt = bfs_distances(g, s);
    int best = s;
    for (int v = 0; v < g.n; ++v)
        if (dt.dist[v] > dt.dist[best]) best = v;
    return best;
}

double gap_upper_bound_auto(const Graph& g, const std::string& family) {
    BoundaryCondition bc;
    bool chosen = false;
    if (family == "regular_tree") {
        bc = branch_thirds_boundary(g, 0);
        chosen = true;
    } else if (family == "uniform_tree" || family == "kesten_iic" || family == "gw_tree") {
        DistanceTable dt = bfs_distances(g, 0);
        int ecc = 0;
        for (int v = 0; v < g.n; ++v) ecc = std::max(ecc, dt.dist[v]);
        if (ecc >= 1) {
            try {
                bc = two_progeny_boundary(g, 0, ecc);
                chosen = true;
            } catch (const BadBoundary&) {
            }
        }
    }
    if (!chosen) {
        int a = farthest_from(g, 0);
        int b = farthest_from(g, a);
        bc.plus = {a};
        bc.minus = {b};
    }
    return gap_upper_bound(g, centered_test_vector(harmonic_potential(g, bc)));
}

double measure(const SweepConfig& cfg, const Graph& g, Rng& rng) {
    const std::string& q = cfg.quantity;
    if (q == "gamma_inverse") {
        return 1.0 / single_card_gap(g);
    }
    if (q == "gap_upper_bound") {
        return gap_upper_bound_auto(g, cfg.family);
    }
    if (q == "a_star") {
        return congestion_a_star(g, build_path_system(g)).a_star;
    }
    if (q == "prop_a") {
        return prop_a_bound(g);
    }
    if (q == "wilson_time") {
        SpectralResult fr = fiedler(g);
        return double(wilson_plan(g, fr.vector, fr.eigenvalue / (2.0 * g.m), cfg.b).t);
    }
    if (q == "mc_tv_curve") {
        SpectralResult fr = fiedler(g);
        WilsonPlan plan = wilson_plan(g, fr.vector, fr.eigenvalue / (2.0 * g.m), cfg.b);
        Rng mc = rng.stream(7);
        return wilson_distinguisher_mc(g, plan, cfg.mc_reps, mc).tv_lower_bound;
    }
    if (q == "exact_tau") {
        return double(exact_mixing_times(g).tau_mix);
    }
    if (q == "stick_census") {
        return double(stick_census(g, cfg.alpha * std::log(double(g.n))));
    }
    if (q == "unmoved_fraction") {
        long long t = std::max<long long>(
            1, (long long)std::floor(cfg.t_factor * g.n * std::log(double(g.n))));
        Rng mc = rng.stream(8);
        return unmoved_fraction(g, t, mc);
    }
    throw BadParams("sweep: unknown quantity " + q);
}

std::string format_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string sanitize(std::string s) {
    for (char& c : s)
        if (c == ',' || c == '\n') c = ';';
    return s;
}

}  // namespace

Graph make_graph(const SweepConfig& cfg, long long size, double eps, Rng& rng) {
    const std::string& f = cfg.family;
    int n = int(size);
    if (f == "path") return path_graph(n);
    if (f == "cycle") return cycle_graph(n);
    if (f == "complete") return complete_graph(n);
    if (f == "hypercube") return hypercube_graph(n);
    if (f == "lollipop") {
        int clique = n / 2 + n % 2;
        return lollipop_graph(clique, n - clique);
    }
    if (f == "regular_tree") return regular_tree(cfg.degree, n);
    if (f == "uniform_tree") return uniform_labelled_tree(n, rng);
    if (f == "kesten_iic") return kesten_iic(n, rng);
    if (f == "gw_tree")
        return gw_tree(OffspringDistribution::poisson(cfg.offspring_mean), n,
                       std::size_t(1) << 24, rng, OnSizeCap::kTruncate);
    if (f == "erdos_renyi") return erdos_renyi(size, cfg.edge_c / double(size), rng);
    if (f == "giant")
        return giant_component(erdos_renyi(size, cfg.edge_c / double(size), rng)).graph;
    if (f == "dlp") {
        long long big_n = (long long)std::llround(double(cfg.eps_n) / eps);
        return dlp_giant(make_dlp_params(big_n, eps), rng);
    }
    if (f == "random_regular") return random_regular(n, cfg.degree, rng);
    throw BadParams("sweep: unknown family " + f);
}

void validate(const SweepConfig& cfg) {
    if (!known(family_names(), cfg.family))
        throw BadParams("sweep config: unknown family " + cfg.family);
    if (!known(quantity_names(), cfg.quantity))
        throw BadParams("sweep config: unknown quantity " + cfg.quantity);
    if (cfg.seeds < 1) throw BadParams("sweep config: seeds must be at least 1");
    if (cfg.family == "dlp") {
        if (cfg.eps_grid.empty()) throw BadParams("sweep config: dlp needs eps_grid");
        for (double e : cfg.eps_grid)
            if (!(e > 0.0 && e < 1.0)) throw BadParams("sweep config: eps outside (0,1)");
        if (cfg.eps_n < 1) throw BadParams("sweep config: eps_n must be positive");
    } else {
        if (cfg.sizes.empty()) throw BadParams("sweep config: sizes must be nonempty");
        for (std::size_t i = 1; i < cfg.sizes.size(); ++i)
            if (cfg.sizes[i] <= cfg.sizes[i - 1])
                throw BadParams("sweep config: sizes must be strictly increasing");
    }
    if (cfg.quantity == "mc_tv_curve" && cfg.mc_reps < 100)
        throw BadParams("sweep config: mc_tv_curve needs at least 100 replications");
}

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
    validate(cfg);
    const Rng root(cfg.base_seed);
    std::vector<SweepPoint> pts = sweep_points(cfg);
    std::vector<SweepRow> rows;
    rows.reserve(pts.size() * std::size_t(cfg.seeds));
    for (std::size_t ip = 0; ip < pts.size(); ++ip) {
        for (int s = 0; s < cfg.seeds; ++s) {
            SweepRow row;
            row.family = cfg.family;
            if (cfg.family == "dlp") {
                char buf[32];
                std::snprintf(buf, sizeof(buf), ":%.6g", pts[ip].eps);
                row.family += buf;
            }
            row.seed = std::uint64_t(s);
            row.quantity = cfg.quantity;
            auto started = std::chrono::steady_clock::now();
            try {
                Rng rng = root.stream(std::uint64_t(ip) * 4096 + std::uint64_t(s));
                Graph g = make_graph(cfg, pts[ip].size, pts[ip].eps, rng);
                row.n = g.n;
                row.m = g.m;
                row.value = measure(cfg, g, rng);
            } catch (const Error& e) {
                row.error = std::string(e.kind()) + ": " + sanitize(e.what());
            } catch (const std::exception& e) {
                row.error = sanitize(e.what());
            }
            row.wall_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - started)
                              .count();
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::string csv_string(const std::vector<SweepRow>& rows, bool include_wall) {
    std::ostringstream out;
    out << "family,n,m,seed,quantity,value,error";
    if (include_wall) out << ",wall_ms";
    out << "\n";
    for (const SweepRow& r : rows) {
        out << r.family << ',' << r.n << ',' << r.m << ',' << r.seed << ','
            << r.quantity << ',' << (r.ok() ? format_value(r.value) : "") << ','
            << r.error;
        if (include_wall) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.3f", r.wall_ms);
            out << ',' << buf;
        }
        out << "\n";
    }
    return out.str();
}

void write_csv(const std::vector<SweepRow>& rows, const std::string& path,
               bool include_wall) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open output file " + path);
    out << csv_string(rows, include_wall);
}

FitResult fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size()) throw DimensionMismatch("fit: unequal point lists");
    if (xs.size() < 3) throw TooFewPoints("fit: need at least 3 points");
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] > 0.0) || !(ys[i] > 0.0))
            throw BadParams("fit: log-log fit needs positive coordinates");
        lx.push_back(std::log(xs[i]));
        ly.push_back(std::log(ys[i]));
    }
    double n = double(lx.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
    }
    double mean_x = sx / n, mean_y = sy / n;
    double den = 0, num = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        den += (lx[i] - mean_x) * (lx[i] - mean_x);
        num += (lx[i] - mean_x) * (ly[i] - mean_y);
    }
    if (den <= 0.0) throw BadParams("fit: x values are all equal");
    FitResult fit;
    fit.slope = num / den;
    fit.intercept = mean_y - fit.slope * mean_x;
    fit.points = int(lx.size());
    double ss_res = 0, ss_tot = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        double pred = fit.intercept + fit.slope * lx[i];
        ss_res += (ly[i] - pred) * (ly[i] - pred);
        ss_tot += (ly[i] - mean_y) * (ly[i] - mean_y);
    }
    fit.r2 = (ss_tot == 0.0) ? 1.0 : 1.0 - ss_res / ss_tot;
    return fit;
}

FitResult fit_exponent(const std::vector<SweepRow>& rows) {
    std::map<long long, std::pair<double, int>> logs;  // n -> (sum of ln value, count)
    for (const SweepRow& r : rows) {
        if (!r.ok() || !(r.value > 0.0) || r.n <= 0) continue;
        auto& acc = logs[r.n];
        acc.first += std::log(r.value);
        acc.second += 1;
    }
    if (logs.size() < 3) throw TooFewPoints("fit: need at least 3 distinct sizes");
    std::vector<double> xs, ys;
    for (auto& [n, acc] : logs) {
        xs.push_back(double(n));
        ys.push_back(std::exp(acc.first / acc.second));
    }
    return fit_loglog(xs, ys);
}

namespace {

std::vector<long long> parse_ll_list(const std::string& text) {
    std::vector<long long> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stoll(item));
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stod(item));
    }
    return out;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

SweepConfig parse_config_text(const std::string& text) {
    SweepConfig cfg;
    std::stringstream ss(text);
    std::string line;
    int line_no = 0;
    while (std::getline(ss, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ParseError("config line " + std::to_string(line_no) + ": expected key=value");
        std::string key = trim(t.substr(0, eq));
        std::string val = trim(t.substr(eq + 1));
        try {
            if (key == "family") cfg.family = val;
            else if (key == "quantity") cfg.quantity = val;
            else if (key == "sizes") cfg.sizes = parse_ll_list(val);
            else if (key == "seeds") cfg.seeds = std::stoi(val);
            else if (key == "seed") cfg.base_seed = std::stoull(val);
            else if (key == "out") cfg.out = val;
            else if (key == "edge_c") cfg.edge_c = std::stod(val);
            else if (key == "degree") cfg.degree = std::stoi(val);
            else if (key == "offspring_mean") cfg.offspring_mean = std::stod(val);
            else if (key == "eps_grid") cfg.eps_grid = parse_double_list(val);
            else if (key == "eps_n") cfg.eps_n = std::stoll(val);
            else if (key == "b") cfg.b = std::stod(val);
            else if (key == "c_const") cfg.c_const = std::stod(val);
            else if (key == "alpha") cfg.alpha = std::stod(val);
            else if (key == "t_factor") cfg.t_factor = std::stod(val);
            else if (key == "mc_reps") cfg.mc_reps = std::stoi(val);
            else throw ParseError("config line " + std::to_string(line_no) + ": unknown key " + key);
        } catch (const std::invalid_argument&) {
            throw ParseError("config line " + std::to_string(line_no) + ": bad number " + val);
        } catch (const std::out_of_range&) {
            throw ParseError("config line " + std::to_string(line_no) + ": number out of range " + val);
        }
    }
    validate(cfg);
    return cfg;
}

SweepConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::vector<std::pair<std::string, SweepConfig>> theorem_a_recipes() {
    std::vector<std::pair<std::string, SweepConfig>> presets;

    SweepConfig a;
    a.family = "regular_tree";
    a.degree = 3;
    a.sizes = {5, 6, 7, 8, 9};
    a.seeds = 1;
    a.base_seed = 1;
    presets.emplace_back("a_regular_tree", a);

    SweepConfig bu;
    bu.family = "uniform_tree";
    bu.sizes = {64, 128, 256, 512, 1024, 2048};
    bu.seeds = 20;
    bu.base_seed = 2026;
    presets.emplace_back("b_uniform_tree", bu);

    SweepConfig bk;
    bk.family = "kesten_iic";
    bk.sizes = {12, 17, 24, 34, 48, 68};  // spine depths, sized to land near b_uniform_tree's n range
    bk.seeds = 20;
    bk.base_seed = 2027;
    presets.emplace_back("b_kesten", bk);

    SweepConfig c;
    c.family = "giant";
    c.edge_c = 1.0;
    c.sizes = {4000, 8000, 16000, 32000, 64000, 128000};
    c.seeds = 32;
    c.base_seed = 2028;
    presets.emplace_back("c_critical_giant", c);

    SweepConfig d;
    d.family = "dlp";
    d.eps_grid = {0.05, 0.07, 0.10, 0.15};
    d.eps_n = 120000;
    d.seeds = 10;
    d.base_seed = 2029;
    presets.emplace_back("d_dlp_giant", d);

    SweepConfig e;
    e.family = "giant";
    e.edge_c = 1.5;
    e.quantity = "stick_census";
    e.sizes = {512, 1024, 2048, 4096, 8192};
    e.seeds = 10;
    e.alpha = 0.5;
    e.base_seed = 2030;
    presets.emplace_back("e_stick_census", e);

    SweepConfig fa;
    fa.family = "random_regular";
    fa.degree = 3;
    fa.quantity = "a_star";
    fa.sizes = {64, 128, 256, 512};
    fa.seeds = 5;
    fa.base_seed = 2031;
    presets.emplace_back("f_congestion", fa);

    SweepConfig fc;
    fc.family = "random_regular";
    fc.degree = 3;
    fc.quantity = "unmoved_fraction";
    fc.sizes = {512};
    fc.seeds = 50;
    fc.t_factor = 0.3;
    fc.base_seed = 2032;
    presets.emplace_back("f_unmoved_census", fc);

    SweepConfig g;
    g.family = "hypercube";
    g.sizes = {3, 4, 5, 6, 7, 8};
    g.seeds = 1;
    g.base_seed = 1;
    presets.emplace_back("g_hypercube", g);

    return presets;
}

long long stick_census(const Graph& g, double min_edges) {
    long long count = 0;
    for (int v = 0; v < g.n; ++v) {
        if (g.degree(v) != 1) continue;
        int prev = v;
        int cur = g.adj[v][0];
        long long len = 1;
        while (g.degree(cur) == 2) {
            int next = (g.adj[cur][0] == prev) ? g.adj[cur][1] : g.adj[cur][0];
            prev = cur;
            cur = next;
            ++len;
        }
        if (double(len) >= min_edges) ++count;
    }
    return count;
}

double unmoved_fraction(const Graph& g, long long t, Rng& rng) {
    if (t < 0) throw BadParams("unmoved census: negative time");
    DeckState s = identity_deck(g.n);
    std::vector<char> moved(g.n, 0);
    for (long long i = 0; i < t; ++i) {
        int e = step_in_place(g, s, rng);
        if (e >= 0) {
            auto [u, v] = g.edges[e];
            moved[s.card_at[u]] = 1;
            moved[s.card_at[v]] = 1;
        }
    }
    long long still = 0;
    for (int c = 0; c < g.n; ++c)
        if (!moved[c]) ++still;
    return double(still) / double(g.n);
}

}  // namespace mixlab
