#include "mixlab/graph.hpp"

#include <algorithm>
#include <fstream>
#include <queue>
#include <sstream>
#include <unordered_set>

namespace mixlab {

int MultiGraph::degree(int v) const {
    int d = 0;
    for (const auto& [a, b] : edges) {
        if (a == v) ++d;
        if (b == v) ++d;  // loop counts twice
    }
    return d;
}

Graph from_edge_list(int n, const std::vector<std::pair<int, int>>& edges) {
    if (n < 0) throw BadParams("from_edge_list: negative vertex count");
    Graph g;
    g.n = n;
    g.adj.assign(n, {});
    g.edges.reserve(edges.size());
    std::unordered_set<long long> seen;
    seen.reserve(edges.size() * 2);
    for (auto [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw OutOfRange("edge endpoint outside 0.." + std::to_string(n - 1) + ": {" +
                             std::to_string(u) + "," + std::to_string(v) + "}");
        if (u == v) throw SelfLoop("self-loop at vertex " + std::to_string(u));
        if (u > v) std::swap(u, v);
        long long key = (long long)u * n + v;
        if (!seen.insert(key).second)
            throw DuplicateEdge("duplicate edge {" + std::to_string(u) + "," +
                                std::to_string(v) + "}");
        g.edges.emplace_back(u, v);
        g.adj[u].push_back(v);
        g.adj[v].push_back(u);
    }
    g.m = int(g.edges.size());
    std::size_t degsum = 0;
    for (auto& nbrs : g.adj) {
        std::sort(nbrs.begin(), nbrs.end());
        degsum += nbrs.size();
    }
    if (degsum != 2 * std::size_t(g.m)) throw Error("degree sum / edge count mismatch");
    return g;
}

DistanceTable bfs_distances(const Graph& g, int source) {
    if (source < 0 || source >= g.n) throw OutOfRange("bfs source out of range");
    DistanceTable t;
    t.source = source;
    t.dist.assign(g.n, DistanceTable::kUnreachable);
    t.dist[source] = 0;
    std::queue<int> q;
    q.push(source);
    while (!q.empty()) {
        int x = q.front();
        q.pop();
        for (int y : g.adj[x]) {
            if (t.dist[y] < 0) {
                t.dist[y] = t.dist[x] + 1;
                q.push(y);
            }
        }
    }
    return t;
}

std::pair<int, int> radius_diameter(const Graph& g) {
    if (g.n == 0) throw EmptyGraph("radius_diameter: empty graph");
    int radius = -1, diameter = 0;
    for (int v = 0; v < g.n; ++v) {
        DistanceTable t = bfs_distances(g, v);
        int ecc = 0;
        for (int d : t.dist) {
            if (d < 0) throw Disconnected("radius_diameter: graph is disconnected");
            ecc = std::max(ecc, d);
        }
        if (radius < 0 || ecc < radius) radius = ecc;
        diameter = std::max(diameter, ecc);
    }
    return {radius, diameter};
}

std::vector<std::vector<int>> connected_components(const Graph& g) {
    std::vector<std::vector<int>> comps;
    std::vector<char> seen(g.n, 0);
    for (int s = 0; s < g.n; ++s) {
        if (seen[s]) continue;
        std::vector<int> comp;
        std::vector<int> stack{s};
        seen[s] = 1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            comp.push_back(x);
            for (int y : g.adj[x]) {
                if (!seen[y]) {
                    seen[y] = 1;
                    stack.push_back(y);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

GiantComponent giant_component(const Graph& g) {
    if (g.n == 0) throw EmptyGraph("giant_component: empty graph");
    auto comps = connected_components(g);
    // Components are discovered in order of their smallest label, so the first
    // maximum is also the smallest-label tie-break winner.
    std::size_t best = 0;
    for (std::size_t i = 1; i < comps.size(); ++i)
        if (comps[i].size() > comps[best].size()) best = i;

    const std::vector<int>& verts = comps[best];
    std::vector<int> to_new(g.n, -1);
    for (std::size_t i = 0; i < verts.size(); ++i) to_new[verts[i]] = int(i);

    std::vector<std::pair<int, int>> sub_edges;
    for (auto [u, v] : g.edges)
        if (to_new[u] >= 0 && to_new[v] >= 0) sub_edges.emplace_back(to_new[u], to_new[v]);

    GiantComponent out;
    out.graph = from_edge_list(int(verts.size()), sub_edges);
    out.original_label = verts;
    return out;
}

std::vector<int> shortest_path(const Graph& g, int u, int v) {
    if (u < 0 || u >= g.n || v < 0 || v >= g.n) throw OutOfRange("shortest_path endpoint");
    DistanceTable t = bfs_distances(g, u);
    if (!t.reachable(v))
        throw Unreachable("no path " + std::to_string(u) + " -> " + std::to_string(v));
    std::vector<int> path{v};
    int cur = v;
    while (cur != u) {
        int parent = -1;
        for (int w : g.adj[cur]) {  // adjacency sorted: first hit is the smallest label
            if (t.dist[w] == t.dist[cur] - 1) {
                parent = w;
                break;
            }
        }
        path.push_back(parent);
        cur = parent;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

bool is_connected(const Graph& g) {
    if (g.n == 0) return false;
    DistanceTable t = bfs_distances(g, 0);
    for (int d : t.dist)
        if (d < 0) return false;
    return true;
}

bool is_tree(const Graph& g) { return g.n >= 1 && g.m == g.n - 1 && is_connected(g); }

Graph read_edge_list(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("line 1: empty input");
    std::istringstream head(line);
    long long n, m;
    if (!(head >> n >> m)) throw ParseError("line 1: expected \"n m\"");
    std::string extra;
    if (head >> extra) throw ParseError("line 1: trailing tokens");
    if (n < 0 || m < 0) throw ParseError("line 1: negative counts");

    std::vector<std::pair<int, int>> edges;
    edges.reserve(std::size_t(m));
    for (long long i = 0; i < m; ++i) {
        if (!std::getline(in, line))
            throw ParseError("line " + std::to_string(i + 2) + ": missing edge line");
        std::istringstream row(line);
        long long u, v;
        if (!(row >> u >> v))
            throw ParseError("line " + std::to_string(i + 2) + ": expected \"u v\"");
        if (row >> extra) throw ParseError("line " + std::to_string(i + 2) + ": trailing tokens");
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw ParseError("line " + std::to_string(i + 2) + ": endpoint out of range");
        if (u >= v)
            throw ParseError("line " + std::to_string(i + 2) + ": requires u < v");
        edges.emplace_back(int(u), int(v));
    }
    try {
        return from_edge_list(int(n), edges);
    } catch (const DuplicateEdge& e) {
        throw ParseError(std::string("duplicate edge in input: ") + e.what());
    }
}

Graph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
    out << g.n << " " << g.m << "\n";
    for (auto [u, v] : g.edges) out << u << " " << v << "\n";
}

std::string edge_list_string(const Graph& g) {
    std::ostringstream out;
    write_edge_list(out, g);
    return out.str();
}

}  // namespace mixlab
