#include "wtn/ranks.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "wtn/error.hpp"

namespace wtn {

std::string_view to_string(RankKind kind) {
    switch (kind) {
        case RankKind::pagerank: return "pagerank";
        case RankKind::cheirank: return "cheirank";
        case RankKind::importrank: return "importrank";
        case RankKind::exportrank: return "exportrank";
    }
    return "?";
}

std::string_view to_string(Level level) {
    switch (level) {
        case Level::node: return "node";
        case Level::country: return "country";
        case Level::product: return "product";
    }
    return "?";
}

RankKind parse_rank_kind(std::string_view name) {
    for (auto kind : {RankKind::pagerank, RankKind::cheirank, RankKind::importrank, RankKind::exportrank}) {
        if (to_string(kind) == name) return kind;
    }
    throw ConfigError("unknown rank metric '" + std::string(name) + "'");
}

Level parse_level(std::string_view name) {
    for (auto level : {Level::node, Level::country, Level::product}) {
        if (to_string(level) == name) return level;
    }
    throw ConfigError("unknown level '" + std::string(name) + "'");
}

RankVector::RankVector(RankKind kind, int year, NodeLayout layout, Eigen::VectorXd node_probs,
                       ConvergenceInfo convergence)
    : kind_(kind),
      year_(year),
      layout_(layout),
      node_(std::move(node_probs)),
      country_(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(layout.n_countries))),
      product_(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(layout.n_products))),
      convergence_(std::move(convergence)) {
    if (static_cast<std::size_t>(node_.size()) != layout_.size()) {
        throw DataError("rank vector size does not match the node layout");
    }
    for (std::size_t p = 0; p < layout_.n_products; ++p) {
        for (std::size_t c = 0; c < layout_.n_countries; ++c) {
            const double x = node_[static_cast<Eigen::Index>(layout_.node(p, c))];
            country_[static_cast<Eigen::Index>(c)] += x;
            product_[static_cast<Eigen::Index>(p)] += x;
        }
    }
}

const Eigen::VectorXd& RankVector::probs(Level level) const {
    switch (level) {
        case Level::country: return country_;
        case Level::product: return product_;
        case Level::node: break;
    }
    return node_;
}

RankVector pagerank(const GoogleMatrix& g, const PowerIterationOptions& options) {
    if (!(options.tol > 0.0)) throw ConfigError("power iteration tolerance must be positive");
    if (options.max_iter < 1) throw ConfigError("power iteration max_iter must be at least 1");

    Eigen::VectorXd current = g.personalization().values();
    Eigen::VectorXd next(current.size());
    ConvergenceInfo info;

    for (int iter = 1; iter <= options.max_iter; ++iter) {
        g.apply(current, next);
        next /= next.sum();
        const double residual = (next - current).lpNorm<1>();
        info.iterations = iter;
        info.residual = residual;
        info.residual_history.push_back(residual);
        current.swap(next);
        if (residual <= options.tol) {
            const auto kind = g.direction() == Direction::direct ? RankKind::pagerank : RankKind::cheirank;
            return RankVector(kind, g.year(), g.layout(), std::move(current), std::move(info));
        }
    }
    throw ConvergenceError("power iteration did not converge in " + std::to_string(options.max_iter) +
                               " iterations (residual " + std::to_string(info.residual) + ")",
                           info.residual, info.iterations);
}

std::pair<RankVector, RankVector> import_export_rank(const MoneyTensor& m) {
    const double volume = m.total_volume();
    if (!(volume > 0.0)) throw DataError("money tensor has no trade");

    const NodeLayout layout{m.n_products(), m.n_countries()};
    const std::size_t nc = layout.n_countries;
    Eigen::VectorXd imports = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(layout.size()));
    Eigen::VectorXd exports = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(layout.size()));
    for (std::size_t p = 0; p < layout.n_products; ++p) {
        for (std::size_t e = 0; e < nc; ++e) {
            for (std::size_t i = 0; i < nc; ++i) {
                const double x = m.value(p, e, i);
                imports[static_cast<Eigen::Index>(layout.node(p, i))] += x;
                exports[static_cast<Eigen::Index>(layout.node(p, e))] += x;
            }
        }
    }
    imports /= volume;
    exports /= volume;
    return {RankVector(RankKind::importrank, m.year(), layout, std::move(imports)),
            RankVector(RankKind::exportrank, m.year(), layout, std::move(exports))};
}

namespace {

std::vector<std::size_t> ranks_from_ordering(const std::vector<std::size_t>& ordering) {
    std::vector<std::size_t> rank(ordering.size(), 0);
    for (std::size_t k = 0; k < ordering.size(); ++k) {
        if (ordering[k] >= ordering.size() || rank[ordering[k]] != 0) {
            throw DataError("ordering is not a permutation");
        }
        rank[ordering[k]] = k + 1;
    }
    return rank;
}

}  // namespace

RankIndex::RankIndex(Level level, std::vector<std::size_t> ordering)
    : level_(level), ordering_(std::move(ordering)), rank_(ranks_from_ordering(ordering_)) {}

RankIndex sort_descending(std::span<const double> probs, Level level) {
    std::vector<std::size_t> ordering(probs.size());
    std::iota(ordering.begin(), ordering.end(), std::size_t{0});
    std::stable_sort(ordering.begin(), ordering.end(),
                     [&](std::size_t a, std::size_t b) { return probs[a] > probs[b]; });
    return RankIndex(level, std::move(ordering));
}

RankIndex sort_index(const RankVector& r, Level level) {
    const auto& p = r.probs(level);
    return sort_descending(std::span<const double>(p.data(), static_cast<std::size_t>(p.size())), level);
}

TwoDRank::TwoDRank(std::vector<std::size_t> ordering)
    : ordering_(std::move(ordering)), rank_(ranks_from_ordering(ordering_)) {}

TwoDRank two_d_rank(const RankIndex& pagerank_index, const RankIndex& cheirank_index) {
    if (pagerank_index.level() != cheirank_index.level() || pagerank_index.size() != cheirank_index.size()) {
        throw ConfigError("2DRank needs PageRank and CheiRank indexes over the same entities");
    }
    std::vector<std::size_t> ordering(pagerank_index.size());
    std::iota(ordering.begin(), ordering.end(), std::size_t{0});
    auto key = [&](std::size_t e) {
        const std::size_t k = pagerank_index.rank_of(e);
        const std::size_t k_star = cheirank_index.rank_of(e);
        return std::make_pair(std::max(k, k_star), k_star);
    };
    // (max, K*) pairs are unique since K* is a permutation.
    std::sort(ordering.begin(), ordering.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
    return TwoDRank(std::move(ordering));
}

}  // namespace wtn
