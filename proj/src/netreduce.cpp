#include "wtn/netreduce.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <utility>

#include "wtn/error.hpp"

namespace wtn {

ReducedNetwork top_k_network(const ReducedMatrix& gr, std::size_t k) {
    const std::size_t n = gr.subset.size();
    if (k < 1) throw ConfigError("k must be at least 1");
    if (k >= n) {
        throw ConfigError("k = " + std::to_string(k) + " needs more than " + std::to_string(k) +
                          " nodes, reduced matrix has " + std::to_string(n));
    }

    ReducedNetwork net;
    net.nodes = gr.subset.members();
    net.k = k;
    net.year = gr.year;

    std::vector<std::size_t> rows(n);
    for (std::size_t b = 0; b < n; ++b) {
        rows.resize(n);
        std::iota(rows.begin(), rows.end(), std::size_t{0});
        rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(b));
        auto stronger = [&](std::size_t x, std::size_t y) {
            const double wx = gr.entries(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(b));
            const double wy = gr.entries(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(b));
            return wx > wy || (wx == wy && gr.subset[x] < gr.subset[y]);
        };
        std::partial_sort(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(k), rows.end(), stronger);
        for (std::size_t t = 0; t < k; ++t) {
            const std::size_t a = rows[t];
            net.edges.push_back({gr.subset[b], gr.subset[a],
                                 gr.entries(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b))});
        }
    }
    return net;
}

std::string_view to_string(LinkChange change) {
    switch (change) {
        case LinkChange::appearing: return "appearing";
        case LinkChange::disappearing: return "disappearing";
        case LinkChange::stable_up: return "stable_up";
        case LinkChange::stable_down: return "stable_down";
    }
    return "?";
}

std::size_t NetworkDiff::count(LinkChange change) const {
    return static_cast<std::size_t>(std::count_if(
        edges.begin(), edges.end(), [&](const ClassifiedEdge& e) { return e.change == change; }));
}

NetworkDiff diff_networks(const ReducedNetwork& before, const ReducedNetwork& after) {
    auto sorted = [](std::vector<std::size_t> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    if (sorted(before.nodes) != sorted(after.nodes)) throw ConfigError("networks have different node sets");
    if (before.k != after.k) throw ConfigError("networks were built with different k");

    std::map<std::pair<std::size_t, std::size_t>, ClassifiedEdge> merged;
    for (const auto& e : before.edges) {
        auto& slot = merged[{e.source, e.target}];
        slot.source = e.source;
        slot.target = e.target;
        slot.weight_before = e.weight;
    }
    for (const auto& e : after.edges) {
        auto& slot = merged[{e.source, e.target}];
        slot.source = e.source;
        slot.target = e.target;
        slot.weight_after = e.weight;
    }

    NetworkDiff diff;
    diff.edges.reserve(merged.size());
    for (auto& [key, edge] : merged) {
        if (!edge.weight_before) {
            edge.change = LinkChange::appearing;
        } else if (!edge.weight_after) {
            edge.change = LinkChange::disappearing;
        } else {
            edge.change = *edge.weight_after >= *edge.weight_before ? LinkChange::stable_up : LinkChange::stable_down;
        }
        diff.edges.push_back(edge);
    }
    return diff;
}

}  // namespace wtn
