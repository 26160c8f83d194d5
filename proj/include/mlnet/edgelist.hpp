#pragma once

#include <string>
#include <vector>

#include "mlnet/graph.hpp"

namespace mlnet {

// Undirected edge list loaded from text: one edge per line, two
// whitespace-separated node labels; '#' and '%' lines are comments.
// Labels map to dense ids 0..n-1 in first-appearance order.
struct EdgeListResult {
    LayerGraph graph;
    std::vector<std::string> labels;  // internal id -> external label
    int duplicates_dropped = 0;
    int self_loops_dropped = 0;
};

// Throws std::runtime_error naming the line on malformed input
// (non-comment, non-blank line without exactly 2 tokens), and on
// missing or edge-free files.
EdgeListResult load_edgelist(const std::string& path);

}  // namespace mlnet
