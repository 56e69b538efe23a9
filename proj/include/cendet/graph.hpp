#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace cendet {

struct Edge {
    int src = 0;
    int dst = 0;
    bool operator==(const Edge&) const = default;
};

// Reply-graph: directed multigraph without self loops. Nodes are dense
// integers [0, node_count); the edge list is the canonical representation
// and its order is preserved from construction.
class DirectedMultigraph {
public:
    DirectedMultigraph() = default;
    DirectedMultigraph(int node_count, std::vector<Edge> edges);

    int node_count() const { return node_count_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t edge_count() const { return edges_.size(); }

    // Per-node outgoing (edge_index, dst) lists in edge-list order.
    std::vector<std::vector<std::pair<int, int>>> out_adjacency() const;

    bool operator==(const DirectedMultigraph&) const = default;

private:
    int node_count_ = 0;
    std::vector<Edge> edges_;
};

// Undirected simple graph with sorted adjacency lists (no self loops,
// no parallel edges).
struct UndirectedSimpleGraph {
    int node_count = 0;
    std::vector<std::vector<int>> adjacency;  // sorted, symmetric

    int degree(int v) const { return static_cast<int>(adjacency[v].size()); }
    bool has_edge(int a, int b) const;
    std::size_t edge_count() const;
};

UndirectedSimpleGraph undirected_simple_projection(const DirectedMultigraph& g);

// Induced subgraph on the largest connected component, node ids relabeled
// contiguously preserving ascending original order. Ties between equal-size
// components go to the one containing the smallest original node id.
// Throws std::invalid_argument on an empty (0-node) graph.
UndirectedSimpleGraph largest_connected_component(const UndirectedSimpleGraph& ug);

// Connected components as a label per node plus the component count.
std::pair<std::vector<int>, int> connected_components(const UndirectedSimpleGraph& ug);

// (in, out) degree sequences counting edge multiplicity.
std::pair<std::vector<int>, std::vector<int>> degree_sequences(const DirectedMultigraph& g);

// Edge-list text format: first line "# nodes=<n>", then "<src>\t<dst>" per
// edge in canonical order, LF endings.
void write_edge_list(std::ostream& os, const DirectedMultigraph& g);
DirectedMultigraph read_edge_list(std::istream& is);
void write_edge_list_file(const std::string& path, const DirectedMultigraph& g);
DirectedMultigraph read_edge_list_file(const std::string& path);

}  // namespace cendet
