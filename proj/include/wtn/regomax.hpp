#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wtn/google.hpp"
#include "wtn/ingest.hpp"
#include "wtn/ranks.hpp"

namespace wtn {

// Ordered set of distinct node ids; the order fixes rows/columns of G_R.
class NodeSubset {
public:
    NodeSubset(std::vector<std::size_t> members, std::size_t n_nodes);

    const std::vector<std::size_t>& members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }
    std::size_t operator[](std::size_t k) const { return members_.at(k); }

private:
    std::vector<std::size_t> members_;
};

struct ReducedMatrix {
    NodeSubset subset;
    NodeLayout layout;
    int year = 0;
    // entries(a, b): effective transition from subset[b] to subset[a].
    Eigen::MatrixXd entries;
    // max-abs residual of (1 - G_ss) X = G_sr, 0 when the scattering set is empty.
    double solve_residual = 0.0;
};

// G_R = G_rr + G_rs (1 - G_ss)^{-1} G_sr, solved by dense LU.
ReducedMatrix reduce(const GoogleMatrix& g, const NodeSubset& subset);

// Subset {(p, c) : c in countries}, ordered by the product's PageRank
// (descending, ties by registry index).
ReducedMatrix reduced_for_product(const GoogleMatrix& g, const RankVector& pagerank_vector,
                                  const CountryRegistry& countries,
                                  std::span<const std::string> iso2_codes, std::size_t product);
ReducedMatrix reduced_for_product(const GoogleMatrix& g, const CountryRegistry& countries,
                                  std::span<const std::string> iso2_codes, std::size_t product,
                                  const PowerIterationOptions& power = {});

// Same matrix with rows/columns permuted into `order` (same member set).
ReducedMatrix reorder(const ReducedMatrix& gr, std::span<const std::size_t> order);

// later - earlier entrywise, in the earlier matrix's ordering.
ReducedMatrix difference(const ReducedMatrix& later, const ReducedMatrix& earlier);

// Stationary distribution of a dense column-stochastic matrix (G x = x, sum 1).
Eigen::VectorXd stationary_distribution(const Eigen::MatrixXd& g);

}  // namespace wtn
