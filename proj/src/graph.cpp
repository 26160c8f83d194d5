#include "mlnet/graph.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace mlnet {

LayerGraph LayerGraph::from_edges(int n, std::vector<std::pair<int, int>> edge_list) {
    if (n < 0) throw std::invalid_argument("LayerGraph: negative node count");
    for (auto& [u, v] : edge_list) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw std::invalid_argument("LayerGraph: node id out of range");
        if (u == v) throw std::invalid_argument("LayerGraph: self-loop");
        if (u > v) std::swap(u, v);
    }
    std::sort(edge_list.begin(), edge_list.end());
    if (std::adjacent_find(edge_list.begin(), edge_list.end()) != edge_list.end())
        throw std::invalid_argument("LayerGraph: duplicate edge");

    LayerGraph g;
    g.n = n;
    g.m = static_cast<int>(edge_list.size());
    g.edges = std::move(edge_list);
    g.degree.assign(n, 0);
    for (const auto& [u, v] : g.edges) {
        ++g.degree[u];
        ++g.degree[v];
    }
    g.offsets.assign(n + 1, 0);
    std::partial_sum(g.degree.begin(), g.degree.end(), g.offsets.begin() + 1);
    g.neighbors.resize(2 * static_cast<std::size_t>(g.m));
    g.incident_edge.resize(2 * static_cast<std::size_t>(g.m));
    std::vector<int> pos(g.offsets.begin(), g.offsets.end() - 1);
    for (int e = 0; e < g.m; ++e) {
        auto [u, v] = g.edges[e];
        g.neighbors[pos[u]] = v;
        g.incident_edge[pos[u]++] = e;
        g.neighbors[pos[v]] = u;
        g.incident_edge[pos[v]++] = e;
    }
    return g;
}

std::vector<int> degree_sequence(const LayerGraph& g) { return g.degree; }

namespace {

inline int find_root(std::vector<int>& parent, int x) {
    while (parent[x] != x) {
        parent[x] = parent[parent[x]];  // path halving
        x = parent[x];
    }
    return x;
}

}  // namespace

int giant_component_mask(const LayerGraph& g,
                         std::span<const std::uint8_t> alive,
                         std::span<const std::uint8_t> link_alive,
                         std::vector<std::uint8_t>& in_giant,
                         ComponentScratch& scratch) {
    auto node_ok = [&](int i) { return alive.empty() || alive[i]; };
    auto link_ok = [&](int e) { return link_alive.empty() || link_alive[e]; };

    auto& parent = scratch.parent;
    parent.resize(g.n);
    std::iota(parent.begin(), parent.end(), 0);
    for (int e = 0; e < g.m; ++e) {
        if (!link_ok(e)) continue;
        auto [u, v] = g.edges[e];
        if (!node_ok(u) || !node_ok(v)) continue;
        int ru = find_root(parent, u);
        int rv = find_root(parent, v);
        if (ru != rv) parent[std::max(ru, rv)] = std::min(ru, rv);
    }

    auto& size = scratch.size;
    size.assign(g.n, 0);
    for (int i = 0; i < g.n; ++i)
        if (node_ok(i)) ++size[find_root(parent, i)];

    // Largest component; ties go to the smaller root, which equals the
    // smallest contained node id since unions keep the minimum as root.
    int best_root = -1, best_size = 0;
    for (int i = 0; i < g.n; ++i) {
        if (size[i] > best_size) {
            best_size = size[i];
            best_root = i;
        }
    }

    in_giant.assign(g.n, 0);
    if (best_root < 0) return 0;
    for (int i = 0; i < g.n; ++i)
        if (node_ok(i) && find_root(parent, i) == best_root) in_giant[i] = 1;
    return best_size;
}

std::vector<int> giant_component(const LayerGraph& g,
                                 std::span<const std::uint8_t> alive,
                                 std::span<const std::uint8_t> link_alive) {
    std::vector<std::uint8_t> mask;
    ComponentScratch scratch;
    giant_component_mask(g, alive, link_alive, mask, scratch);
    std::vector<int> out;
    for (int i = 0; i < g.n; ++i)
        if (mask[i]) out.push_back(i);
    return out;
}

}  // namespace mlnet
