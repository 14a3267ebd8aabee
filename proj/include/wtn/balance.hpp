#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include <Eigen/Dense>

#include "wtn/google.hpp"
#include "wtn/ingest.hpp"
#include "wtn/ranks.hpp"

namespace wtn {

// Normalized balance (export - import) / (export + import), per country.
// Pass PageRank/CheiRank for B_c, ImportRank/ExportRank for the hat variant.
// An entity with no mass on either side gets 0.
Eigen::VectorXd country_balance(const RankVector& import_side, const RankVector& export_side);

// Same formula on product marginals.
Eigen::VectorXd product_balance(const RankVector& import_side, const RankVector& export_side);

// Per node (p, c). The denominator is the product-level sum P*_p + P_p, not
// the node's own sum; the entries of one product add up to B_p.
Eigen::VectorXd node_balance(const RankVector& import_side, const RankVector& export_side);

struct BalanceReport {
    int year = 0;
    NodeLayout layout;
    Eigen::VectorXd country;       // B_c
    Eigen::VectorXd country_hat;   // B^_c
    Eigen::VectorXd product;       // B_p
    Eigen::VectorXd product_hat;   // B^_p, zero up to rounding
    Eigen::VectorXd node;          // B_pc at layout.node(p, c)
    Eigen::VectorXd node_hat;      // B^_pc

    double node_value(std::size_t p, std::size_t c) const {
        return node[static_cast<Eigen::Index>(layout.node(p, c))];
    }
    double node_hat_value(std::size_t p, std::size_t c) const {
        return node_hat[static_cast<Eigen::Index>(layout.node(p, c))];
    }
};

BalanceReport balance_report(const RankVector& pagerank, const RankVector& cheirank,
                             const RankVector& importrank, const RankVector& exportrank);

// Component-wise later - earlier; both reports must share a layout.
BalanceReport difference(const BalanceReport& later, const BalanceReport& earlier);

enum class DifferenceScheme { central, forward };
std::string_view to_string(DifferenceScheme scheme);

struct SensitivityOptions {
    double delta = 1e-3;
    DifferenceScheme scheme = DifferenceScheme::central;
    // Also evaluate at delta / 2 and report the gap between the two estimates.
    bool richardson_check = true;
    GoogleOptions google;
    PowerIterationOptions power;
};

struct SensitivityReport {
    int year = 0;
    std::size_t product = 0;
    Eigen::VectorXd derivative;  // dB_c/d delta per country
    double delta_used = 0.0;
    DifferenceScheme scheme = DifferenceScheme::central;
    std::optional<Eigen::VectorXd> half_step_derivative;
    // max_c |estimate(delta) - estimate(delta/2)|, 0 without the check.
    double richardson_gap = 0.0;
};

// PageRank-CheiRank country balances of a tensor (G, G*, P, P* rebuilt from scratch).
Eigen::VectorXd pagerank_cheirank_country_balance(const MoneyTensor& m, const GoogleOptions& google,
                                                  const PowerIterationOptions& power);

// dB_c/d delta for scaling every flow of product p by (1 + delta), estimated by
// finite differences of full recomputations.
SensitivityReport balance_sensitivity(const MoneyTensor& m, std::size_t product,
                                      const SensitivityOptions& options = {});

}  // namespace wtn
