#include "wtn/metrics.hpp"

#include <cassert>
#include <string>

#include "wtn/error.hpp"

namespace wtn {

RankingList::RankingList(std::vector<std::size_t> positions) : positions_(std::move(positions)) {
    std::vector<bool> seen(positions_.size() + 1, false);
    for (const std::size_t pos : positions_) {
        if (pos < 1 || pos > positions_.size() || seen[pos]) {
            throw ConfigError("ranking positions must be a permutation of 1.." + std::to_string(positions_.size()));
        }
        seen[pos] = true;
    }
}

RankingList RankingList::from_ordering(std::span<const std::size_t> ordering) {
    std::vector<std::size_t> positions(ordering.size(), 0);
    for (std::size_t k = 0; k < ordering.size(); ++k) {
        if (ordering[k] >= ordering.size()) throw ConfigError("ordering entry out of range");
        positions[ordering[k]] = k + 1;
    }
    return RankingList(std::move(positions));
}

namespace {

int sign(long x) { return (x > 0) - (x < 0); }

}  // namespace

double kendall_distance(const RankingList& a, const RankingList& b) {
    const std::size_t n = a.size();
    if (b.size() != n) throw ConfigError("ranking lists have different lengths");
    if (n < 2) throw ConfigError("Kendall distance needs at least two entities");

    const auto& ta = a.positions();
    const auto& tb = b.positions();
    long total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const int sa = sign(static_cast<long>(ta[i]) - static_cast<long>(ta[j]));
            const int sb = sign(static_cast<long>(tb[i]) - static_cast<long>(tb[j]));
            assert(sa != 0 && sb != 0);
            total += 1 - sa * sb;
        }
    }
    return static_cast<double>(total) / (static_cast<double>(n) * static_cast<double>(n - 1));
}

}  // namespace wtn
