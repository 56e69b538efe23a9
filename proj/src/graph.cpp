#include "cendet/graph.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace cendet {

DirectedMultigraph::DirectedMultigraph(int node_count, std::vector<Edge> edges)
    : node_count_(node_count), edges_(std::move(edges)) {
    if (node_count_ < 0) throw std::invalid_argument("negative node count");
    for (const Edge& e : edges_) {
        if (e.src == e.dst) throw std::invalid_argument("self loop rejected");
        if (e.src < 0 || e.src >= node_count_ || e.dst < 0 || e.dst >= node_count_)
            throw std::invalid_argument("edge endpoint out of range");
    }
}

std::vector<std::vector<std::pair<int, int>>> DirectedMultigraph::out_adjacency() const {
    std::vector<std::vector<std::pair<int, int>>> adj(node_count_);
    for (std::size_t i = 0; i < edges_.size(); ++i)
        adj[edges_[i].src].emplace_back(static_cast<int>(i), edges_[i].dst);
    return adj;
}

bool UndirectedSimpleGraph::has_edge(int a, int b) const {
    const auto& nb = adjacency[a];
    return std::binary_search(nb.begin(), nb.end(), b);
}

std::size_t UndirectedSimpleGraph::edge_count() const {
    std::size_t total = 0;
    for (const auto& nb : adjacency) total += nb.size();
    return total / 2;
}

UndirectedSimpleGraph undirected_simple_projection(const DirectedMultigraph& g) {
    UndirectedSimpleGraph ug;
    ug.node_count = g.node_count();
    ug.adjacency.assign(g.node_count(), {});
    for (const Edge& e : g.edges()) {
        ug.adjacency[e.src].push_back(e.dst);
        ug.adjacency[e.dst].push_back(e.src);
    }
    for (auto& nb : ug.adjacency) {
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    }
    return ug;
}

std::pair<std::vector<int>, int> connected_components(const UndirectedSimpleGraph& ug) {
    std::vector<int> label(ug.node_count, -1);
    int count = 0;
    for (int start = 0; start < ug.node_count; ++start) {
        if (label[start] != -1) continue;
        label[start] = count;
        std::queue<int> q;
        q.push(start);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int w : ug.adjacency[v]) {
                if (label[w] == -1) {
                    label[w] = count;
                    q.push(w);
                }
            }
        }
        ++count;
    }
    return {std::move(label), count};
}

UndirectedSimpleGraph largest_connected_component(const UndirectedSimpleGraph& ug) {
    if (ug.node_count == 0) throw std::invalid_argument("empty graph");
    auto [label, count] = connected_components(ug);
    std::vector<int> size(count, 0);
    for (int l : label) ++size[l];
    // Components are labeled in order of their smallest node id, so the
    // first label of maximal size wins the tie-break.
    int best = 0;
    for (int c = 1; c < count; ++c)
        if (size[c] > size[best]) best = c;

    std::vector<int> new_id(ug.node_count, -1);
    int next = 0;
    for (int v = 0; v < ug.node_count; ++v)
        if (label[v] == best) new_id[v] = next++;

    UndirectedSimpleGraph out;
    out.node_count = next;
    out.adjacency.assign(next, {});
    for (int v = 0; v < ug.node_count; ++v) {
        if (new_id[v] == -1) continue;
        for (int w : ug.adjacency[v]) out.adjacency[new_id[v]].push_back(new_id[w]);
    }
    return out;
}

std::pair<std::vector<int>, std::vector<int>> degree_sequences(const DirectedMultigraph& g) {
    std::vector<int> in(g.node_count(), 0), out(g.node_count(), 0);
    for (const Edge& e : g.edges()) {
        ++out[e.src];
        ++in[e.dst];
    }
    return {std::move(in), std::move(out)};
}

void write_edge_list(std::ostream& os, const DirectedMultigraph& g) {
    os << "# nodes=" << g.node_count() << "\n";
    for (const Edge& e : g.edges()) os << e.src << "\t" << e.dst << "\n";
}

DirectedMultigraph read_edge_list(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("# nodes=", 0) != 0)
        throw std::runtime_error("edge list: missing '# nodes=' header");
    int n = std::stoi(line.substr(8));
    std::vector<Edge> edges;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        Edge e;
        if (!(ls >> e.src >> e.dst)) throw std::runtime_error("edge list: bad edge line: " + line);
        edges.push_back(e);
    }
    return DirectedMultigraph(n, std::move(edges));
}

void write_edge_list_file(const std::string& path, const DirectedMultigraph& g) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    write_edge_list(os, g);
}

DirectedMultigraph read_edge_list_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open for reading: " + path);
    return read_edge_list(is);
}

}  // namespace cendet
