#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "wtn/ingest.hpp"

namespace wtn {

// Node i = (product p, country c) lives at index p * n_countries + c.
struct NodeLayout {
    std::size_t n_products = 0;
    std::size_t n_countries = 0;

    std::size_t size() const noexcept { return n_products * n_countries; }
    std::size_t node(std::size_t p, std::size_t c) const noexcept { return p * n_countries + c; }
    std::size_t product_of(std::size_t i) const noexcept { return i / n_countries; }
    std::size_t country_of(std::size_t i) const noexcept { return i % n_countries; }

    friend bool operator==(const NodeLayout&, const NodeLayout&) = default;
};

// direct: column (p, exporter) distributes to importers, giving G.
// inverted: column (p, importer) distributes to exporters, giving G*.
enum class Direction { direct, inverted };

// Column-stochastic transition matrix S. Dangling columns are kept out of the
// sparse part and stand for the uniform column 1/N.
class StochasticMatrix {
public:
    using Sparse = Eigen::SparseMatrix<double, Eigen::ColMajor>;

    StochasticMatrix(Direction direction, NodeLayout layout, int year, Sparse links,
                     std::vector<bool> dangling);

    Direction direction() const noexcept { return direction_; }
    const NodeLayout& layout() const noexcept { return layout_; }
    int year() const noexcept { return year_; }
    std::size_t dimension() const noexcept { return layout_.size(); }

    const Sparse& links() const noexcept { return links_; }
    bool is_dangling(std::size_t j) const { return dangling_.at(j); }
    const std::vector<bool>& dangling() const noexcept { return dangling_; }
    std::size_t dangling_count() const noexcept;

    // Implied dense S including the uniform dangling columns.
    Eigen::MatrixXd dense() const;

private:
    Direction direction_;
    NodeLayout layout_;
    int year_;
    Sparse links_;
    std::vector<bool> dangling_;
};

StochasticMatrix build_stochastic(const MoneyTensor& m, Direction direction);

// Teleportation vector: each product gets its share of the world volume, split
// evenly over countries.
class PersonalizationVector {
public:
    static constexpr double kZeroVolumeFloor = 1e-12;

    PersonalizationVector(NodeLayout layout, Eigen::VectorXd values, bool floored);

    const NodeLayout& layout() const noexcept { return layout_; }
    const Eigen::VectorXd& values() const noexcept { return values_; }
    double operator[](std::size_t i) const { return values_[static_cast<Eigen::Index>(i)]; }
    // True when some product had zero volume and the uniform floor was mixed in.
    bool floored() const noexcept { return floored_; }

private:
    NodeLayout layout_;
    Eigen::VectorXd values_;
    bool floored_;
};

PersonalizationVector build_personalization(const MoneyTensor& m);

struct GoogleOptions {
    double alpha = 0.5;
    std::string dangling_policy = "uniform_1_over_N";
};

// G = alpha S + (1 - alpha) v 1^T, kept in factored form.
class GoogleMatrix {
public:
    GoogleMatrix(StochasticMatrix s, PersonalizationVector v, double alpha);

    const StochasticMatrix& stochastic() const noexcept { return s_; }
    const PersonalizationVector& personalization() const noexcept { return v_; }
    double alpha() const noexcept { return alpha_; }
    Direction direction() const noexcept { return s_.direction(); }
    const NodeLayout& layout() const noexcept { return s_.layout(); }
    int year() const noexcept { return s_.year(); }
    std::size_t dimension() const noexcept { return s_.dimension(); }

    // y = G x. Reentrant.
    Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
    void apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const;

    // Dense sub-block G[rows, cols] with dangling and teleportation terms included.
    Eigen::MatrixXd block(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const;
    Eigen::MatrixXd dense() const;

private:
    StochasticMatrix s_;
    PersonalizationVector v_;
    double alpha_;
    std::vector<std::size_t> dangling_columns_;
};

GoogleMatrix assemble_google(StochasticMatrix s, PersonalizationVector v,
                             const GoogleOptions& options = {});

// build_stochastic + build_personalization + assemble_google.
GoogleMatrix build_google(const MoneyTensor& m, Direction direction,
                          const GoogleOptions& options = {});

}  // namespace wtn
