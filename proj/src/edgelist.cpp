#include "mlnet/edgelist.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace mlnet {

EdgeListResult load_edgelist(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_edgelist: cannot open " + path);

    EdgeListResult out;
    std::unordered_map<std::string, int> id_of;
    auto intern = [&](const std::string& label) {
        auto [it, inserted] = id_of.try_emplace(label, static_cast<int>(out.labels.size()));
        if (inserted) out.labels.push_back(label);
        return it->second;
    };

    std::vector<std::pair<int, int>> edges;
    std::unordered_set<std::int64_t> seen;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string a, b, extra;
        if (!(ls >> a)) continue;  // blank line
        if (a[0] == '#' || a[0] == '%') continue;
        if (!(ls >> b) || (ls >> extra)) {
            std::ostringstream msg;
            msg << "load_edgelist: " << path << ":" << lineno
                << ": expected exactly 2 tokens";
            throw std::runtime_error(msg.str());
        }
        int u = intern(a), v = intern(b);
        if (u == v) {
            ++out.self_loops_dropped;
            continue;
        }
        std::int64_t key = u < v ? (static_cast<std::int64_t>(u) << 32) | v
                                 : (static_cast<std::int64_t>(v) << 32) | u;
        if (!seen.insert(key).second) {
            ++out.duplicates_dropped;
            continue;
        }
        edges.emplace_back(u, v);
    }
    if (edges.empty())
        throw std::runtime_error("load_edgelist: no edges in " + path);
    out.graph = LayerGraph::from_edges(static_cast<int>(out.labels.size()),
                                       std::move(edges));
    return out;
}

}  // namespace mlnet
