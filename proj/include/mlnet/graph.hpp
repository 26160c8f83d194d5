#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace mlnet {

// One network layer. Topology is immutable after construction; damage
// state (alive nodes, alive links) lives in run-local scratch so many
// cascades can share one graph.
struct LayerGraph {
    int n = 0;
    int m = 0;                                  // undirected edge count
    std::vector<std::pair<int, int>> edges;     // canonical u < v
    std::vector<int> offsets;                   // CSR, size n+1
    std::vector<int> neighbors;                 // size 2m
    std::vector<int> incident_edge;             // edge id parallel to neighbors
    std::vector<int> degree;                    // construction-time degrees

    // Builds the CSR structure from a simple undirected edge list.
    // Throws std::invalid_argument on self-loops, duplicates, or ids
    // outside [0, n).
    static LayerGraph from_edges(int n, std::vector<std::pair<int, int>> edge_list);
};

// Original (construction-time) degrees; unaffected by damage.
std::vector<int> degree_sequence(const LayerGraph& g);

// Largest connected component restricted to alive nodes and alive
// links. Ties between equal-size components go to the component
// containing the smallest node id. Empty graph -> empty set.
// alive/link_alive may be empty, meaning "all alive".
std::vector<int> giant_component(const LayerGraph& g,
                                 std::span<const std::uint8_t> alive = {},
                                 std::span<const std::uint8_t> link_alive = {});

// Hot-path variant: writes a membership mask and returns the component
// size. Scratch vectors are caller-owned to avoid reallocation.
struct ComponentScratch {
    std::vector<int> parent;
    std::vector<int> size;
};

int giant_component_mask(const LayerGraph& g,
                         std::span<const std::uint8_t> alive,
                         std::span<const std::uint8_t> link_alive,
                         std::vector<std::uint8_t>& in_giant,
                         ComponentScratch& scratch);

}  // namespace mlnet
