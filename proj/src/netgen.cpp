#include "mlnet/netgen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "mlnet/coupling.hpp"
#include "mlnet/rng.hpp"

namespace mlnet {

namespace {

inline std::int64_t edge_key(int u, int v, int n) {
    if (u > v) std::swap(u, v);
    return static_cast<std::int64_t>(u) * n + v;
}

// linear index w in [0, n(n-1)/2) -> ordered pair (i, j), i < j
inline std::pair<int, int> unrank_pair(std::int64_t w, int n) {
    // first guess from the quadratic formula, then correct
    double nn = static_cast<double>(n);
    int i = static_cast<int>((2 * nn - 1 - std::sqrt((2 * nn - 1) * (2 * nn - 1) -
                                                     8.0 * static_cast<double>(w))) /
                             2.0);
    if (i < 0) i = 0;
    auto row_start = [&](int r) {
        return static_cast<std::int64_t>(r) * (2 * n - r - 1) / 2;
    };
    while (row_start(i + 1) <= w) ++i;
    while (row_start(i) > w) --i;
    int j = static_cast<int>(w - row_start(i)) + i + 1;
    return {i, j};
}

// Sample each of the n(n-1)/2 pairs independently with probability q
// via geometric skips; appends to `edges`, skipping keys in `taken`.
void sample_er_edges(int n, double q, Rng& rng,
                     std::vector<std::pair<int, int>>& edges,
                     const std::unordered_set<std::int64_t>* taken) {
    const std::int64_t npairs = static_cast<std::int64_t>(n) * (n - 1) / 2;
    if (q <= 0.0) return;
    if (q >= 1.0) {
        for (std::int64_t w = 0; w < npairs; ++w) edges.push_back(unrank_pair(w, n));
        return;
    }
    const double log1mq = std::log1p(-q);
    std::int64_t w = -1;
    for (;;) {
        double u = rng.uniform01();
        double skip = std::floor(std::log1p(-u) / log1mq);
        w += 1 + static_cast<std::int64_t>(skip);
        if (w >= npairs || w < 0) break;
        auto [i, j] = unrank_pair(w, n);
        if (taken && taken->count(edge_key(i, j, n))) continue;
        edges.emplace_back(i, j);
    }
}

}  // namespace

LayerGraph gen_er(const GenSpec& spec) {
    if (spec.kind != GenSpec::Kind::er)
        throw std::invalid_argument("gen_er: spec.kind must be er");
    if (spec.n < 2) throw std::invalid_argument("gen_er: n must be >= 2");
    if (!(spec.mean_degree > 0.0) || spec.mean_degree > spec.n - 1)
        throw std::invalid_argument("gen_er: mean_degree must be in (0, n-1]");
    Rng rng(spec.seed);
    double q = spec.mean_degree / (spec.n - 1);
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(spec.mean_degree * spec.n / 2 * 1.1));
    sample_er_edges(spec.n, q, rng, edges, nullptr);
    return LayerGraph::from_edges(spec.n, std::move(edges));
}

LayerGraph gen_scale_free(const GenSpec& spec) {
    if (spec.kind != GenSpec::Kind::scale_free)
        throw std::invalid_argument("gen_scale_free: spec.kind must be scale_free");
    if (spec.n < 2) throw std::invalid_argument("gen_scale_free: n must be >= 2");
    if (!(spec.gamma > 1.0)) throw std::invalid_argument("gen_scale_free: gamma must be > 1");
    int k_max = spec.k_max > 0 ? spec.k_max
                               : static_cast<int>(std::floor(std::sqrt(spec.n)));
    if (spec.k_min < 1 || spec.k_min > k_max || k_max > spec.n - 1)
        throw std::invalid_argument("gen_scale_free: need 1 <= k_min <= k_max <= n-1");

    Rng rng(spec.seed);
    // cumulative weights k^-gamma on [k_min, k_max]
    std::vector<double> cdf(k_max - spec.k_min + 1);
    double acc = 0.0;
    for (int k = spec.k_min; k <= k_max; ++k) {
        acc += std::pow(static_cast<double>(k), -spec.gamma);
        cdf[k - spec.k_min] = acc;
    }
    for (auto& c : cdf) c /= acc;
    auto sample_degree = [&]() {
        double u = rng.uniform01();
        auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
        return spec.k_min + static_cast<int>(it - cdf.begin());
    };

    std::vector<int> deg(spec.n);
    std::int64_t total = 0;
    for (int i = 0; i < spec.n; ++i) total += (deg[i] = sample_degree());
    while (total % 2 != 0) {
        int i = static_cast<int>(rng.below(spec.n));
        total -= deg[i];
        deg[i] = sample_degree();
        total += deg[i];
    }

    std::vector<int> stubs;
    stubs.reserve(total);
    for (int i = 0; i < spec.n; ++i) stubs.insert(stubs.end(), deg[i], i);
    for (std::size_t i = stubs.size(); i > 1; --i)
        std::swap(stubs[i - 1], stubs[rng.below(i)]);

    const int m = static_cast<int>(stubs.size() / 2);
    std::vector<std::pair<int, int>> edges(m);
    std::unordered_map<std::int64_t, int> count;
    count.reserve(2 * m);
    for (int e = 0; e < m; ++e) {
        edges[e] = {stubs[2 * e], stubs[2 * e + 1]};
        ++count[edge_key(edges[e].first, edges[e].second, spec.n)];
    }

    auto is_bad = [&](int e) {
        auto [u, v] = edges[e];
        return u == v || count[edge_key(u, v, spec.n)] > 1;
    };
    std::vector<int> bad;
    for (int e = 0; e < m; ++e)
        if (is_bad(e)) bad.push_back(e);

    std::int64_t attempts = 0;
    const std::int64_t budget = 1'000'000;
    while (!bad.empty()) {
        int e = bad.back();
        if (!is_bad(e)) {
            bad.pop_back();
            continue;
        }
        if (++attempts > budget)
            throw std::runtime_error("gen_scale_free: simple-graph repair budget exhausted");
        int f = static_cast<int>(rng.below(m));
        if (f == e) continue;
        auto [u, v] = edges[e];
        auto [x, y] = edges[f];
        // degree-preserving rewires: (u,v),(x,y) -> (u,x),(v,y)
        if (u == x || v == y) continue;
        std::int64_t k1 = edge_key(u, x, spec.n), k2 = edge_key(v, y, spec.n);
        if (k1 == k2 || count.count(k1) && count[k1] > 0) continue;
        if (count.count(k2) && count[k2] > 0) continue;
        --count[edge_key(u, v, spec.n)];
        --count[edge_key(x, y, spec.n)];
        edges[e] = {u, x};
        edges[f] = {v, y};
        ++count[k1];
        ++count[k2];
        // edge f may have become bad only if it was; both new edges are
        // simple by the checks above, so only recheck e's slot
        if (is_bad(f)) bad.push_back(f);
    }
    return LayerGraph::from_edges(spec.n, std::move(edges));
}

namespace {

std::vector<CouplingPair> build_pairs(const LayerGraph& a, const LayerGraph& b,
                                      double theta,
                                      const std::vector<std::pair<int, int>>& match) {
    std::vector<CouplingPair> pairs;
    pairs.reserve(match.size());
    for (auto [i, j] : match) {
        auto [aa, ab] = coupling_strengths(a.degree[i], b.degree[j], theta);
        pairs.push_back({i, j, aa, ab});
    }
    return pairs;
}

}  // namespace

MultilayerSystem pair_layers(LayerGraph a, LayerGraph b, double theta,
                             PairingKind pairing, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::pair<int, int>> match;
    switch (pairing) {
        case PairingKind::identity: {
            if (a.n != b.n)
                throw std::invalid_argument("pair_layers: identity needs equal sizes");
            for (int i = 0; i < a.n; ++i) match.emplace_back(i, i);
            break;
        }
        case PairingKind::random_permutation: {
            if (a.n != b.n)
                throw std::invalid_argument("pair_layers: permutation needs equal sizes");
            std::vector<int> perm(b.n);
            std::iota(perm.begin(), perm.end(), 0);
            for (std::size_t i = perm.size(); i > 1; --i)
                std::swap(perm[i - 1], perm[rng.below(i)]);
            for (int i = 0; i < a.n; ++i) match.emplace_back(i, perm[i]);
            break;
        }
        case PairingKind::random_subset: {
            int k = std::min(a.n, b.n);
            std::vector<int> ia(a.n), ib(b.n);
            std::iota(ia.begin(), ia.end(), 0);
            std::iota(ib.begin(), ib.end(), 0);
            // partial Fisher-Yates: first k entries are a uniform random
            // subset in uniform random order
            for (int i = 0; i < k; ++i)
                std::swap(ia[i], ia[i + rng.below(a.n - i)]);
            for (int i = 0; i < k; ++i)
                std::swap(ib[i], ib[i + rng.below(b.n - i)]);
            for (int i = 0; i < k; ++i) match.emplace_back(ia[i], ib[i]);
            break;
        }
    }
    Pairing pr;
    pr.layer_a = 0;
    pr.layer_b = 1;
    pr.pairs = build_pairs(a, b, theta, match);
    std::vector<LayerGraph> layers;
    layers.push_back(std::move(a));
    layers.push_back(std::move(b));
    return make_system(std::move(layers), {std::move(pr)}, theta);
}

MultilayerSystem gen_overlap_system(const OverlapSpec& spec, double theta,
                                    std::uint64_t seed) {
    if (!(spec.omega >= 0.0 && spec.omega <= 1.0))
        throw std::invalid_argument("gen_overlap_system: omega must be in [0,1]");
    if (spec.base.kind != GenSpec::Kind::er)
        throw std::invalid_argument("gen_overlap_system: base must be er");
    GenSpec base = spec.base;
    base.seed = derive_seed(seed, 1);
    LayerGraph a = gen_er(base);

    Rng rng(derive_seed(seed, 2));
    std::vector<std::pair<int, int>> b_edges;
    std::unordered_set<std::int64_t> copied;
    for (const auto& [u, v] : a.edges)
        if (rng.bernoulli(spec.omega)) {
            b_edges.emplace_back(u, v);
            copied.insert(edge_key(u, v, base.n));
        }
    double fill_q = (1.0 - spec.omega) * base.mean_degree / (base.n - 1);
    sample_er_edges(base.n, fill_q, rng, b_edges, &copied);
    LayerGraph b = LayerGraph::from_edges(base.n, std::move(b_edges));
    return pair_layers(std::move(a), std::move(b), theta, PairingKind::identity, 0);
}

MultilayerSystem build_chain(const std::vector<GenSpec>& specs, double theta,
                             std::uint64_t seed) {
    if (specs.size() < 3)
        throw std::invalid_argument("build_chain: need at least 3 layers");
    for (const auto& s : specs)
        if (s.n != specs.front().n)
            throw std::invalid_argument("build_chain: layers must have equal sizes");
    std::vector<LayerGraph> layers;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        GenSpec s = specs[i];
        s.seed = derive_seed(seed, 10 + i);
        layers.push_back(s.kind == GenSpec::Kind::er ? gen_er(s) : gen_scale_free(s));
    }
    std::vector<Pairing> pairings;
    for (std::size_t i = 0; i + 1 < layers.size(); ++i) {
        Pairing pr;
        pr.layer_a = static_cast<int>(i);
        pr.layer_b = static_cast<int>(i + 1);
        std::vector<std::pair<int, int>> match;
        for (int v = 0; v < layers[i].n; ++v) match.emplace_back(v, v);
        pr.pairs = build_pairs(layers[i], layers[i + 1], theta, match);
        pairings.push_back(std::move(pr));
    }
    return make_system(std::move(layers), std::move(pairings), theta);
}

}  // namespace mlnet
