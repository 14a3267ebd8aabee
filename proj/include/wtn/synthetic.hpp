#pragma once

#include <cstdint>
#include <iosfwd>

#include "wtn/ingest.hpp"

namespace wtn::synthetic {

struct TensorSpec {
    int year = 2018;
    std::size_t n_products = 10;
    std::size_t n_countries = 194;
    // Probability that a given (product, exporter, importer) cell carries trade.
    double density = 0.4;
    std::uint64_t seed = 1;
};

// Random trade tensor with heavy-tailed country sizes and log-normal volumes.
// Countries are named C000, C001, ... unless `countries` is supplied.
MoneyTensor random_tensor(const TensorSpec& spec);
MoneyTensor random_tensor(const TensorSpec& spec, const CountryRegistry& countries,
                          const ProductRegistry& products);

CountryRegistry numbered_countries(std::size_t n);
ProductRegistry numbered_products(std::size_t n);

// Emits the tensor as trade records: an importer report for every cell and an
// exporter mirror report that under-reports by up to `mirror_gap` (relative).
void write_records(const MoneyTensor& m, std::ostream& out, double mirror_gap = 0.1,
                   std::uint64_t seed = 7);

}  // namespace wtn::synthetic
