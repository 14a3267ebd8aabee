#include <algorithm>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "wtn/error.hpp"
#include "wtn/regomax.hpp"

using namespace wtn;

namespace {

std::vector<std::size_t> random_subset(std::size_t n, std::size_t k, std::mt19937_64& rng) {
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(k);
    return all;
}

// Restriction of the oracle PageRank to the subset, renormalized.
Eigen::VectorXd projected(const Eigen::VectorXd& full, const std::vector<std::size_t>& members) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(members.size()));
    for (std::size_t k = 0; k < members.size(); ++k) out[static_cast<Eigen::Index>(k)] = full[static_cast<Eigen::Index>(members[k])];
    return out / out.sum();
}

}  // namespace

TEST(NodeSubset, Validation) {
    EXPECT_THROW(NodeSubset({}, 5), ConfigError);
    EXPECT_THROW(NodeSubset({1, 1}, 5), ConfigError);
    EXPECT_THROW(NodeSubset({5}, 5), ConfigError);
    EXPECT_NO_THROW(NodeSubset({4, 0}, 5));
}

TEST(Reduce, FullSubsetIsDenseGoogleMatrix) {
    const auto m = oracle::small_random_tensor(2, 6, 3);
    const auto g = build_google(m, Direction::direct);
    std::vector<std::size_t> all(g.dimension());
    std::iota(all.begin(), all.end(), std::size_t{0});
    const auto gr = reduce(g, NodeSubset(all, g.dimension()));
    EXPECT_LE((gr.entries - oracle::dense_google(m, 0.5, false)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_EQ(gr.solve_residual, 0.0);
}

TEST(Reduce, StochasticAndRankConsistent) {
    std::mt19937_64 rng(5);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto m = oracle::small_random_tensor(seed + 100, 10, 3);
        for (const bool inverted : {false, true}) {
            const auto g = build_google(m, inverted ? Direction::inverted : Direction::direct);
            const std::size_t nr = std::min<std::size_t>(5, g.dimension());
            const auto members = random_subset(g.dimension(), nr, rng);
            const auto gr = reduce(g, NodeSubset(members, g.dimension()));

            const Eigen::RowVectorXd sums = gr.entries.colwise().sum();
            EXPECT_LE((sums.array() - 1.0).abs().maxCoeff(), 1e-12);
            EXPECT_GE(gr.entries.minCoeff(), 0.0);
            EXPECT_LE(gr.solve_residual, 1e-12);

            const auto expected = projected(oracle::dense_pagerank_linear(m, 0.5, inverted), members);
            EXPECT_LE((stationary_distribution(gr.entries) - expected).lpNorm<1>(), 1e-10) << "seed " << seed;
        }
    }
}

TEST(Reduce, SingleNodeIsOne) {
    const auto m = oracle::small_random_tensor(7);
    const auto g = build_google(m, Direction::direct);
    const auto gr = reduce(g, NodeSubset({1}, g.dimension()));
    ASSERT_EQ(gr.entries.rows(), 1);
    EXPECT_NEAR(gr.entries(0, 0), 1.0, 1e-12);
}

TEST(ReducedForProduct, OrderedByPageRank) {
    const auto m = oracle::small_random_tensor(9, 6, 3);
    const auto g = build_google(m, Direction::direct);
    const auto p = pagerank(g);
    const std::vector<std::string> codes{m.countries().at(0).iso2, m.countries().at(1).iso2,
                                         m.countries().at(2).iso2};
    const std::size_t product = m.n_products() - 1;
    const auto gr = reduced_for_product(g, p, m.countries(), codes, product);
    ASSERT_EQ(gr.subset.size(), 3u);
    for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(g.layout().product_of(gr.subset[k]), product);
    for (std::size_t k = 1; k < 3; ++k) {
        EXPECT_GE(p.node_probs()[static_cast<Eigen::Index>(gr.subset[k - 1])],
                  p.node_probs()[static_cast<Eigen::Index>(gr.subset[k])]);
    }
    const auto again = reduced_for_product(g, m.countries(), codes, product);
    EXPECT_EQ(again.subset.members(), gr.subset.members());
    EXPECT_EQ(again.entries, gr.entries);
}

TEST(ReducedForProduct, UnknownCountryIsRejected) {
    const auto m = oracle::small_random_tensor(9, 6, 3);
    const auto g = build_google(m, Direction::direct);
    const std::vector<std::string> codes{"ZZ"};
    EXPECT_THROW(reduced_for_product(g, m.countries(), codes, 0), ConfigError);
    const std::vector<std::string> ok{m.countries().at(0).iso2};
    EXPECT_THROW(reduced_for_product(g, m.countries(), ok, m.n_products()), ConfigError);
}

TEST(Reorder, PermutesRowsAndColumns) {
    const auto m = oracle::small_random_tensor(10, 6, 2);
    const auto g = build_google(m, Direction::direct);
    const auto gr = reduce(g, NodeSubset({0, 2, 3}, g.dimension()));
    const std::vector<std::size_t> order{3, 0, 2};
    const auto re = reorder(gr, order);
    EXPECT_EQ(re.entries(0, 1), gr.entries(2, 0));
    EXPECT_EQ(re.entries(2, 0), gr.entries(1, 2));
    const std::vector<std::size_t> bad{3, 0, 1};
    EXPECT_THROW(reorder(gr, bad), ConfigError);
}

TEST(Difference, AlignsToEarlierOrdering) {
    const auto a = oracle::small_random_tensor(10, 6, 2);
    const auto b = a.with_product_scaled(0, 3.0);
    const auto ga = build_google(a, Direction::direct);
    const auto gb = build_google(b, Direction::direct);
    const auto ra = reduce(ga, NodeSubset({0, 2, 3}, ga.dimension()));
    const auto rb = reduce(gb, NodeSubset({3, 2, 0}, gb.dimension()));
    const auto d = difference(rb, ra);
    EXPECT_EQ(d.subset.members(), ra.subset.members());
    EXPECT_NEAR(d.entries(0, 1), rb.entries(2, 1) - ra.entries(0, 1), 1e-15);
    // Columns of both matrices sum to one, so differences sum to zero.
    EXPECT_LE(d.entries.colwise().sum().cwiseAbs().maxCoeff(), 1e-12);
}

TEST(StationaryDistribution, MatchesOracle) {
    const auto m = oracle::small_random_tensor(14, 6, 3);
    const auto dense = oracle::dense_google(m, 0.5, false);
    EXPECT_LE((stationary_distribution(dense) - oracle::dense_stationary(dense)).lpNorm<1>(), 1e-12);
    EXPECT_THROW(stationary_distribution(Eigen::MatrixXd(2, 3)), ConfigError);
}
