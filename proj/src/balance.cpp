#include "wtn/balance.hpp"

#include <cmath>
#include <string>

#include "wtn/error.hpp"

namespace wtn {

namespace {

void check_pair(const RankVector& a, const RankVector& b) {
    if (!(a.layout() == b.layout())) throw DataError("rank vectors use different node layouts");
}

Eigen::VectorXd normalized_difference(const Eigen::VectorXd& imports, const Eigen::VectorXd& exports) {
    Eigen::VectorXd out(imports.size());
    for (Eigen::Index i = 0; i < imports.size(); ++i) {
        const double sum = exports[i] + imports[i];
        out[i] = sum > 0.0 ? (exports[i] - imports[i]) / sum : 0.0;
    }
    return out;
}

}  // namespace

Eigen::VectorXd country_balance(const RankVector& import_side, const RankVector& export_side) {
    check_pair(import_side, export_side);
    return normalized_difference(import_side.country_probs(), export_side.country_probs());
}

Eigen::VectorXd product_balance(const RankVector& import_side, const RankVector& export_side) {
    check_pair(import_side, export_side);
    return normalized_difference(import_side.product_probs(), export_side.product_probs());
}

Eigen::VectorXd node_balance(const RankVector& import_side, const RankVector& export_side) {
    check_pair(import_side, export_side);
    const NodeLayout& layout = import_side.layout();
    Eigen::VectorXd out(static_cast<Eigen::Index>(layout.size()));
    for (std::size_t p = 0; p < layout.n_products; ++p) {
        const auto pi = static_cast<Eigen::Index>(p);
        const double denom = export_side.product_probs()[pi] + import_side.product_probs()[pi];
        for (std::size_t c = 0; c < layout.n_countries; ++c) {
            const auto i = static_cast<Eigen::Index>(layout.node(p, c));
            const double diff = export_side.node_probs()[i] - import_side.node_probs()[i];
            out[i] = denom > 0.0 ? diff / denom : 0.0;
        }
    }
    return out;
}

BalanceReport balance_report(const RankVector& pagerank, const RankVector& cheirank,
                             const RankVector& importrank, const RankVector& exportrank) {
    check_pair(pagerank, importrank);
    BalanceReport report;
    report.year = pagerank.year();
    report.layout = pagerank.layout();
    report.country = country_balance(pagerank, cheirank);
    report.country_hat = country_balance(importrank, exportrank);
    report.product = product_balance(pagerank, cheirank);
    report.product_hat = product_balance(importrank, exportrank);
    report.node = node_balance(pagerank, cheirank);
    report.node_hat = node_balance(importrank, exportrank);
    return report;
}

BalanceReport difference(const BalanceReport& later, const BalanceReport& earlier) {
    if (!(later.layout == earlier.layout)) throw DataError("balance reports use different node layouts");
    BalanceReport out;
    out.year = later.year;
    out.layout = later.layout;
    out.country = later.country - earlier.country;
    out.country_hat = later.country_hat - earlier.country_hat;
    out.product = later.product - earlier.product;
    out.product_hat = later.product_hat - earlier.product_hat;
    out.node = later.node - earlier.node;
    out.node_hat = later.node_hat - earlier.node_hat;
    return out;
}

std::string_view to_string(DifferenceScheme scheme) {
    return scheme == DifferenceScheme::central ? "central" : "forward";
}

Eigen::VectorXd pagerank_cheirank_country_balance(const MoneyTensor& m, const GoogleOptions& google,
                                                  const PowerIterationOptions& power) {
    const auto p = pagerank(build_google(m, Direction::direct, google), power);
    const auto p_star = pagerank(build_google(m, Direction::inverted, google), power);
    return country_balance(p, p_star);
}

namespace {

Eigen::VectorXd finite_difference(const MoneyTensor& m, std::size_t product, double delta,
                                  const SensitivityOptions& options, const Eigen::VectorXd& base) {
    auto balance_at = [&](double d) {
        return pagerank_cheirank_country_balance(m.with_product_scaled(product, 1.0 + d), options.google,
                                                 options.power);
    };
    if (options.scheme == DifferenceScheme::central) {
        return (balance_at(delta) - balance_at(-delta)) / (2.0 * delta);
    }
    return (balance_at(delta) - base) / delta;
}

}  // namespace

SensitivityReport balance_sensitivity(const MoneyTensor& m, std::size_t product,
                                      const SensitivityOptions& options) {
    if (product >= m.n_products()) throw ConfigError("product index out of range: " + std::to_string(product));
    if (!(options.delta > 0.0 && options.delta < 1.0)) {
        throw ConfigError("sensitivity delta must lie in (0,1)");
    }

    Eigen::VectorXd base;
    if (options.scheme == DifferenceScheme::forward) {
        base = pagerank_cheirank_country_balance(m, options.google, options.power);
    }

    SensitivityReport report;
    report.year = m.year();
    report.product = product;
    report.delta_used = options.delta;
    report.scheme = options.scheme;
    report.derivative = finite_difference(m, product, options.delta, options, base);
    if (options.richardson_check) {
        auto half = finite_difference(m, product, options.delta / 2.0, options, base);
        report.richardson_gap = (report.derivative - half).cwiseAbs().maxCoeff();
        report.half_step_derivative = std::move(half);
    }
    for (Eigen::Index c = 0; c < report.derivative.size(); ++c) {
        if (!std::isfinite(report.derivative[c])) throw DataError("non-finite balance sensitivity");
    }
    return report;
}

}  // namespace wtn
