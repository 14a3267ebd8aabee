#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "wtn/regomax.hpp"

namespace wtn {

// Directed edge between network nodes; weight is G_R(target, source).
struct NetworkEdge {
    std::size_t source = 0;
    std::size_t target = 0;
    double weight = 0.0;
};

// For every source node, its k strongest outgoing transitions in G_R.
struct ReducedNetwork {
    std::vector<std::size_t> nodes;  // node ids of the reduced matrix, in its order
    std::vector<NetworkEdge> edges;  // grouped by source, strongest first
    std::size_t k = 0;
    int year = 0;
};

// Diagonal entries are never selected; ties keep the lower node id.
ReducedNetwork top_k_network(const ReducedMatrix& gr, std::size_t k);

enum class LinkChange {
    appearing,     // only in the later network
    disappearing,  // only in the earlier network
    stable_up,     // in both, weight did not decrease
    stable_down,   // in both, weight decreased
};

std::string_view to_string(LinkChange change);

struct ClassifiedEdge {
    std::size_t source = 0;
    std::size_t target = 0;
    LinkChange change = LinkChange::stable_up;
    std::optional<double> weight_before;
    std::optional<double> weight_after;
};

struct NetworkDiff {
    std::vector<ClassifiedEdge> edges;  // sorted by (source, target)

    std::size_t count(LinkChange change) const;
};

NetworkDiff diff_networks(const ReducedNetwork& before, const ReducedNetwork& after);

}  // namespace wtn
