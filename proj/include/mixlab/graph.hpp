#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "mixlab/errors.hpp"

namespace mixlab {

// Simple undirected graph on dense labels 0..n-1. Immutable after
// construction; adjacency lists are kept sorted ascending so every traversal
// below is deterministic.
struct Graph {
    int n = 0;
    int m = 0;
    std::vector<std::pair<int, int>> edges;  // stored with u < v, input order
    std::vector<std::vector<int>> adj;

    int degree(int v) const { return int(adj[v].size()); }
};

// Loops and parallel edges allowed; a loop (v,v) contributes 2 to degree(v).
struct MultiGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;

    int degree(int v) const;
};

struct DistanceTable {
    static constexpr int kUnreachable = -1;
    int source = 0;
    std::vector<int> dist;

    bool reachable(int v) const { return dist[v] >= 0; }
};

Graph from_edge_list(int n, const std::vector<std::pair<int, int>>& edges);

DistanceTable bfs_distances(const Graph& g, int source);

// (radius, diameter); requires a connected graph.
std::pair<int, int> radius_diameter(const Graph& g);

std::vector<std::vector<int>> connected_components(const Graph& g);

struct GiantComponent {
    Graph graph;
    std::vector<int> original_label;  // new vertex id -> label in the input graph
};

// Largest component as an induced subgraph relabelled 0..k-1 preserving label
// order; ties between equal-size components go to the one holding the
// smallest original label.
GiantComponent giant_component(const Graph& g);

// Shortest path u -> v. Deterministic: each vertex's BFS parent is its
// smallest-labelled neighbor in the previous level.
std::vector<int> shortest_path(const Graph& g, int u, int v);

bool is_connected(const Graph& g);
bool is_tree(const Graph& g);

// Text format: first line "n m", then m lines "u v" with u < v.
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const Graph& g);
std::string edge_list_string(const Graph& g);

}  // namespace mixlab
