#include "wtn/synthetic.hpp"

#include <cstdio>
#include <ostream>
#include <random>

#include "wtn/error.hpp"
#include "wtn/report.hpp"

namespace wtn::synthetic {

CountryRegistry numbered_countries(std::size_t n) {
    if (n > 26 * 26) throw ConfigError("at most 676 numbered countries");
    std::vector<Country> entries;
    for (std::size_t c = 0; c < n; ++c) {
        const std::string code{static_cast<char>('A' + c / 26), static_cast<char>('A' + c % 26)};
        char name[16];
        std::snprintf(name, sizeof name, "C%03zu", c);
        entries.push_back({code, name});
    }
    return CountryRegistry(std::move(entries));
}

ProductRegistry numbered_products(std::size_t n) {
    std::vector<Product> entries;
    for (std::size_t p = 0; p < n; ++p) entries.push_back({static_cast<int>(p), "product " + std::to_string(p)});
    return ProductRegistry(std::move(entries));
}

MoneyTensor random_tensor(const TensorSpec& spec) {
    return random_tensor(spec, numbered_countries(spec.n_countries), numbered_products(spec.n_products));
}

MoneyTensor random_tensor(const TensorSpec& spec, const CountryRegistry& countries,
                          const ProductRegistry& products) {
    const std::size_t np = products.size();
    const std::size_t nc = countries.size();
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::lognormal_distribution<double> size_dist(0.0, 1.5);
    std::lognormal_distribution<double> volume_dist(0.0, 1.0);

    std::vector<double> economy(nc);
    for (auto& s : economy) s = size_dist(rng);
    std::vector<double> product_weight(np);
    for (auto& w : product_weight) w = 0.2 + unit(rng);

    std::vector<double> values(np * nc * nc, 0.0);
    for (std::size_t p = 0; p < np; ++p) {
        for (std::size_t e = 0; e < nc; ++e) {
            for (std::size_t i = 0; i < nc; ++i) {
                if (e == i || unit(rng) >= spec.density) continue;
                values[(p * nc + e) * nc + i] =
                    1e6 * product_weight[p] * economy[e] * economy[i] * volume_dist(rng);
            }
        }
    }
    return MoneyTensor(spec.year, products, countries, std::move(values));
}

void write_records(const MoneyTensor& m, std::ostream& out, double mirror_gap, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> gap(0.0, mirror_gap);
    const auto& countries = m.countries();
    out << "year,reporter,partner,sitc,flow,value_usd\n";
    for (std::size_t p = 0; p < m.n_products(); ++p) {
        const int sitc = m.products().at(p).sitc;
        for (std::size_t e = 0; e < m.n_countries(); ++e) {
            for (std::size_t i = 0; i < m.n_countries(); ++i) {
                const double x = m.value(p, e, i);
                if (x <= 0.0) continue;
                out << m.year() << ',' << countries.at(i).iso2 << ',' << countries.at(e).iso2 << ',' << sitc
                    << ",import," << report::format_number(x) << '\n';
                out << m.year() << ',' << countries.at(e).iso2 << ',' << countries.at(i).iso2 << ',' << sitc
                    << ",export," << report::format_number(x * (1.0 - gap(rng))) << '\n';
            }
        }
    }
}

}  // namespace wtn::synthetic
