#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace wtn {

// Strict ranking: positions()[i] is the 1-based position of entity i.
class RankingList {
public:
    explicit RankingList(std::vector<std::size_t> positions);

    // From an ordering where ordering[k] is the entity at 0-based position k.
    static RankingList from_ordering(std::span<const std::size_t> ordering);

    std::size_t size() const noexcept { return positions_.size(); }
    const std::vector<std::size_t>& positions() const noexcept { return positions_; }

private:
    std::vector<std::size_t> positions_;
};

// Kendall tau distance: fraction of discordant pairs, 0 for identical lists and
// 1 for reversed ones. Lists must rank the same N >= 2 entities.
double kendall_distance(const RankingList& a, const RankingList& b);

}  // namespace wtn
