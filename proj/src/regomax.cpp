#include "wtn/regomax.hpp"

#include <algorithm>
#include <numeric>

#include <Eigen/LU>

#include "wtn/error.hpp"

namespace wtn {

NodeSubset::NodeSubset(std::vector<std::size_t> members, std::size_t n_nodes)
    : members_(std::move(members)) {
    if (members_.empty() || members_.size() > n_nodes) {
        throw ConfigError("node subset size must lie in [1, " + std::to_string(n_nodes) + "]");
    }
    std::vector<bool> seen(n_nodes, false);
    for (const std::size_t i : members_) {
        if (i >= n_nodes) throw ConfigError("node id " + std::to_string(i) + " out of range");
        if (seen[i]) throw ConfigError("duplicate node id " + std::to_string(i) + " in subset");
        seen[i] = true;
    }
}

ReducedMatrix reduce(const GoogleMatrix& g, const NodeSubset& subset) {
    const std::size_t n = g.dimension();
    if (subset.size() > n) throw ConfigError("subset larger than the network");

    std::vector<bool> in_subset(n, false);
    for (const std::size_t i : subset.members()) {
        if (i >= n) throw ConfigError("subset node outside the network");
        in_subset[i] = true;
    }
    std::vector<std::size_t> scattering;
    scattering.reserve(n - subset.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (!in_subset[i]) scattering.push_back(i);
    }

    const auto& r = subset.members();
    ReducedMatrix out{subset, g.layout(), g.year(), g.block(r, r), 0.0};
    if (scattering.empty()) return out;

    const Eigen::MatrixXd g_rs = g.block(r, scattering);
    const Eigen::MatrixXd g_sr = g.block(scattering, r);
    Eigen::MatrixXd system = -g.block(scattering, scattering);
    system.diagonal().array() += 1.0;

    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);
    const Eigen::MatrixXd x = lu.solve(g_sr);
    if (!x.allFinite()) throw SolverError("singular scattering block 1 - G_ss");

    out.solve_residual = (system * x - g_sr).cwiseAbs().maxCoeff();
    out.entries.noalias() += g_rs * x;
    return out;
}

ReducedMatrix reduced_for_product(const GoogleMatrix& g, const RankVector& pagerank_vector,
                                  const CountryRegistry& countries,
                                  std::span<const std::string> iso2_codes, std::size_t product) {
    const NodeLayout& layout = g.layout();
    if (product >= layout.n_products) throw ConfigError("product index out of range: " + std::to_string(product));
    if (countries.size() != layout.n_countries || !(pagerank_vector.layout() == layout)) {
        throw ConfigError("registry or rank vector does not match the Google matrix");
    }

    std::vector<std::size_t> members;
    members.reserve(iso2_codes.size());
    for (const auto& code : iso2_codes) members.push_back(layout.node(product, countries.index_of(code)));

    const auto& probs = pagerank_vector.node_probs();
    std::stable_sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
        const double pa = probs[static_cast<Eigen::Index>(a)];
        const double pb = probs[static_cast<Eigen::Index>(b)];
        return pa > pb || (pa == pb && a < b);
    });
    return reduce(g, NodeSubset(std::move(members), layout.size()));
}

ReducedMatrix reduced_for_product(const GoogleMatrix& g, const CountryRegistry& countries,
                                  std::span<const std::string> iso2_codes, std::size_t product,
                                  const PowerIterationOptions& power) {
    return reduced_for_product(g, pagerank(g, power), countries, iso2_codes, product);
}

ReducedMatrix reorder(const ReducedMatrix& gr, std::span<const std::size_t> order) {
    const auto& members = gr.subset.members();
    if (order.size() != members.size()) throw ConfigError("reordering has a different member count");

    std::vector<Eigen::Index> source(order.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        const auto it = std::find(members.begin(), members.end(), order[k]);
        if (it == members.end()) throw ConfigError("reordering names a node outside the subset");
        source[k] = static_cast<Eigen::Index>(it - members.begin());
    }
    const auto n = static_cast<Eigen::Index>(order.size());
    Eigen::MatrixXd entries(n, n);
    for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = 0; b < n; ++b) entries(a, b) = gr.entries(source[a], source[b]);

    const std::size_t n_nodes = gr.layout.size();
    return ReducedMatrix{NodeSubset({order.begin(), order.end()}, n_nodes), gr.layout, gr.year,
                         std::move(entries), gr.solve_residual};
}

ReducedMatrix difference(const ReducedMatrix& later, const ReducedMatrix& earlier) {
    if (!(later.layout == earlier.layout)) throw ConfigError("reduced matrices use different layouts");
    ReducedMatrix aligned = reorder(later, earlier.subset.members());
    aligned.entries -= earlier.entries;
    aligned.solve_residual = std::max(later.solve_residual, earlier.solve_residual);
    return aligned;
}

Eigen::VectorXd stationary_distribution(const Eigen::MatrixXd& g) {
    const Eigen::Index n = g.rows();
    if (n == 0 || g.cols() != n) throw ConfigError("stationary distribution needs a square matrix");
    // (G - 1) x = 0 with the last equation replaced by sum(x) = 1.
    Eigen::MatrixXd system = g;
    system.diagonal().array() -= 1.0;
    system.row(n - 1).setOnes();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    rhs[n - 1] = 1.0;
    Eigen::VectorXd x = system.partialPivLu().solve(rhs);
    if (!x.allFinite()) throw SolverError("stationary distribution is not unique");
    return x / x.sum();
}

}  // namespace wtn
