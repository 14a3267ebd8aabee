#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "wtn/google.hpp"
#include "wtn/ingest.hpp"

namespace wtn {

enum class RankKind { pagerank, cheirank, importrank, exportrank };
enum class Level { node, country, product };

std::string_view to_string(RankKind kind);
std::string_view to_string(Level level);
RankKind parse_rank_kind(std::string_view name);
Level parse_level(std::string_view name);

struct PowerIterationOptions {
    double tol = 1e-12;  // on the L1 residual |G P - P|
    int max_iter = 1000;
};

struct ConvergenceInfo {
    int iterations = 0;
    double residual = 0.0;
    std::vector<double> residual_history;
};

// Probability vector over (product, country) nodes with its country and
// product marginals.
class RankVector {
public:
    RankVector(RankKind kind, int year, NodeLayout layout, Eigen::VectorXd node_probs,
               ConvergenceInfo convergence = {});

    RankKind kind() const noexcept { return kind_; }
    int year() const noexcept { return year_; }
    const NodeLayout& layout() const noexcept { return layout_; }

    const Eigen::VectorXd& node_probs() const noexcept { return node_; }
    const Eigen::VectorXd& country_probs() const noexcept { return country_; }
    const Eigen::VectorXd& product_probs() const noexcept { return product_; }
    const Eigen::VectorXd& probs(Level level) const;

    double node(std::size_t p, std::size_t c) const {
        return node_[static_cast<Eigen::Index>(layout_.node(p, c))];
    }

    // Empty for import/export ranks.
    const ConvergenceInfo& convergence() const noexcept { return convergence_; }

private:
    RankKind kind_;
    int year_;
    NodeLayout layout_;
    Eigen::VectorXd node_;
    Eigen::VectorXd country_;
    Eigen::VectorXd product_;
    ConvergenceInfo convergence_;
};

// Stationary vector of G by power iteration from v. PageRank for the direct
// matrix, CheiRank for the inverted one. Throws ConvergenceError when the
// residual is still above tol after max_iter steps.
RankVector pagerank(const GoogleMatrix& g, const PowerIterationOptions& options = {});

// (ImportRank, ExportRank) from raw volume shares.
std::pair<RankVector, RankVector> import_export_rank(const MoneyTensor& m);

// Entities sorted by descending probability; equal probabilities keep
// ascending registry index.
class RankIndex {
public:
    RankIndex(Level level, std::vector<std::size_t> ordering);

    Level level() const noexcept { return level_; }
    std::size_t size() const noexcept { return ordering_.size(); }
    // ordering()[k] is the entity at 0-based position k.
    const std::vector<std::size_t>& ordering() const noexcept { return ordering_; }
    // 1-based rank K of an entity.
    std::size_t rank_of(std::size_t entity) const { return rank_.at(entity); }

private:
    Level level_;
    std::vector<std::size_t> ordering_;
    std::vector<std::size_t> rank_;
};

RankIndex sort_index(const RankVector& r, Level level);
RankIndex sort_descending(std::span<const double> probs, Level level);

// Countries ordered by ascending max(K, K*), ties by ascending K*.
class TwoDRank {
public:
    explicit TwoDRank(std::vector<std::size_t> ordering);

    const std::vector<std::size_t>& ordering() const noexcept { return ordering_; }
    std::size_t rank_of(std::size_t entity) const { return rank_.at(entity); }

private:
    std::vector<std::size_t> ordering_;
    std::vector<std::size_t> rank_;
};

TwoDRank two_d_rank(const RankIndex& pagerank_index, const RankIndex& cheirank_index);

}  // namespace wtn
