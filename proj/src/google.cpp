#include "wtn/google.hpp"

#include <algorithm>

#include "wtn/error.hpp"

namespace wtn {

StochasticMatrix::StochasticMatrix(Direction direction, NodeLayout layout, int year, Sparse links,
                                   std::vector<bool> dangling)
    : direction_(direction),
      layout_(layout),
      year_(year),
      links_(std::move(links)),
      dangling_(std::move(dangling)) {
    const auto n = static_cast<Eigen::Index>(layout_.size());
    if (links_.rows() != n || links_.cols() != n || dangling_.size() != layout_.size()) {
        throw DataError("stochastic matrix dimensions do not match the node layout");
    }
}

std::size_t StochasticMatrix::dangling_count() const noexcept {
    return static_cast<std::size_t>(std::count(dangling_.begin(), dangling_.end(), true));
}

Eigen::MatrixXd StochasticMatrix::dense() const {
    const auto n = static_cast<Eigen::Index>(dimension());
    Eigen::MatrixXd out = Eigen::MatrixXd(links_);
    for (Eigen::Index j = 0; j < n; ++j) {
        if (dangling_[static_cast<std::size_t>(j)]) out.col(j).setConstant(1.0 / static_cast<double>(n));
    }
    return out;
}

StochasticMatrix build_stochastic(const MoneyTensor& m, Direction direction) {
    if (!(m.total_volume() > 0.0)) throw DataError("money tensor has no trade");

    const NodeLayout layout{m.n_products(), m.n_countries()};
    const std::size_t nc = layout.n_countries;
    const std::size_t n = layout.size();

    // flow(p, from, to) along the chosen direction.
    auto flow = [&](std::size_t p, std::size_t from, std::size_t to) {
        return direction == Direction::direct ? m.value(p, from, to) : m.value(p, to, from);
    };

    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(m.link_count());
    std::vector<bool> dangling(n, false);

    for (std::size_t p = 0; p < layout.n_products; ++p) {
        for (std::size_t from = 0; from < nc; ++from) {
            double out_flow = 0.0;
            for (std::size_t to = 0; to < nc; ++to) out_flow += flow(p, from, to);

            const std::size_t column = layout.node(p, from);
            if (out_flow <= 0.0) {
                dangling[column] = true;
                continue;
            }
            for (std::size_t to = 0; to < nc; ++to) {
                const double x = flow(p, from, to);
                if (x > 0.0) {
                    triplets.emplace_back(static_cast<int>(layout.node(p, to)),
                                          static_cast<int>(column), x / out_flow);
                }
            }
        }
    }

    StochasticMatrix::Sparse links(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    links.setFromTriplets(triplets.begin(), triplets.end());
    links.makeCompressed();
    return StochasticMatrix(direction, layout, m.year(), std::move(links), std::move(dangling));
}

PersonalizationVector::PersonalizationVector(NodeLayout layout, Eigen::VectorXd values, bool floored)
    : layout_(layout), values_(std::move(values)), floored_(floored) {
    if (static_cast<std::size_t>(values_.size()) != layout_.size()) {
        throw DataError("personalization vector size does not match the node layout");
    }
    if ((values_.array() <= 0.0).any()) throw DataError("personalization entries must be positive");
}

PersonalizationVector build_personalization(const MoneyTensor& m) {
    const double volume = m.total_volume();
    if (!(volume > 0.0)) throw DataError("money tensor has no trade");

    const NodeLayout layout{m.n_products(), m.n_countries()};
    const auto nc = static_cast<double>(layout.n_countries);
    Eigen::VectorXd v(static_cast<Eigen::Index>(layout.size()));
    bool has_empty_product = false;
    for (std::size_t p = 0; p < layout.n_products; ++p) {
        const double share = m.product_volume(p) / volume;
        has_empty_product = has_empty_product || share == 0.0;
        for (std::size_t c = 0; c < layout.n_countries; ++c) {
            v[static_cast<Eigen::Index>(layout.node(p, c))] = share / nc;
        }
    }
    if (has_empty_product) {
        constexpr double eps = PersonalizationVector::kZeroVolumeFloor;
        const double uniform = 1.0 / static_cast<double>(layout.size());
        v = (1.0 - eps) * v.array() + eps * uniform;
    }
    return PersonalizationVector(layout, std::move(v), has_empty_product);
}

GoogleMatrix::GoogleMatrix(StochasticMatrix s, PersonalizationVector v, double alpha)
    : s_(std::move(s)), v_(std::move(v)), alpha_(alpha) {
    if (!(alpha_ > 0.0 && alpha_ < 1.0)) {
        throw ConfigError("damping factor alpha must lie in (0,1), got " + std::to_string(alpha_));
    }
    if (!(s_.layout() == v_.layout())) {
        throw DataError("stochastic matrix and personalization vector layouts differ");
    }
    for (std::size_t j = 0; j < s_.dimension(); ++j) {
        if (s_.is_dangling(j)) dangling_columns_.push_back(j);
    }
}

void GoogleMatrix::apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const {
    const auto n = static_cast<double>(dimension());
    double dangling_mass = 0.0;
    for (const std::size_t j : dangling_columns_) dangling_mass += x[static_cast<Eigen::Index>(j)];

    y.noalias() = alpha_ * (s_.links() * x);
    y.array() += alpha_ * dangling_mass / n;
    y.noalias() += ((1.0 - alpha_) * x.sum()) * v_.values();
}

Eigen::VectorXd GoogleMatrix::apply(const Eigen::VectorXd& x) const {
    Eigen::VectorXd y(x.size());
    apply(x, y);
    return y;
}

Eigen::MatrixXd GoogleMatrix::block(std::span<const std::size_t> rows,
                                    std::span<const std::size_t> cols) const {
    const std::size_t n = dimension();
    const auto nr = static_cast<Eigen::Index>(rows.size());
    const auto ncols = static_cast<Eigen::Index>(cols.size());

    std::vector<Eigen::Index> row_position(n, -1);
    for (Eigen::Index r = 0; r < nr; ++r) {
        const std::size_t i = rows[static_cast<std::size_t>(r)];
        if (i >= n) throw ConfigError("block row index out of range");
        row_position[i] = r;
    }

    Eigen::VectorXd teleport(nr);
    for (Eigen::Index r = 0; r < nr; ++r) teleport[r] = (1.0 - alpha_) * v_[rows[static_cast<std::size_t>(r)]];

    Eigen::MatrixXd out(nr, ncols);
    const double uniform = alpha_ / static_cast<double>(n);
    for (Eigen::Index c = 0; c < ncols; ++c) {
        const std::size_t j = cols[static_cast<std::size_t>(c)];
        if (j >= n) throw ConfigError("block column index out of range");
        out.col(c) = teleport;
        if (s_.is_dangling(j)) {
            out.col(c).array() += uniform;
            continue;
        }
        for (StochasticMatrix::Sparse::InnerIterator it(s_.links(), static_cast<Eigen::Index>(j)); it; ++it) {
            const Eigen::Index r = row_position[static_cast<std::size_t>(it.row())];
            if (r >= 0) out(r, c) += alpha_ * it.value();
        }
    }
    return out;
}

Eigen::MatrixXd GoogleMatrix::dense() const {
    std::vector<std::size_t> all(dimension());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return block(all, all);
}

GoogleMatrix assemble_google(StochasticMatrix s, PersonalizationVector v, const GoogleOptions& options) {
    if (options.dangling_policy != "uniform_1_over_N") {
        throw ConfigError("unsupported dangling_policy '" + options.dangling_policy + "'");
    }
    return GoogleMatrix(std::move(s), std::move(v), options.alpha);
}

GoogleMatrix build_google(const MoneyTensor& m, Direction direction, const GoogleOptions& options) {
    return assemble_google(build_stochastic(m, direction), build_personalization(m), options);
}

}  // namespace wtn
