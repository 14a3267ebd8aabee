#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include "wtn/ingest.hpp"
#include "wtn/synthetic.hpp"

namespace wtn::fixtures {

struct Flow3 {
    std::size_t product;
    std::size_t exporter;
    std::size_t importer;
    double value;
};

// Tensor over numbered registries (AA, AB, AC, ...) from explicit flows.
inline MoneyTensor tensor(std::size_t n_countries, std::size_t n_products, std::initializer_list<Flow3> flows,
                          int year = 2018) {
    std::vector<double> values(n_products * n_countries * n_countries, 0.0);
    for (const auto& f : flows) values[(f.product * n_countries + f.exporter) * n_countries + f.importer] = f.value;
    return MoneyTensor(year, synthetic::numbered_products(n_products), synthetic::numbered_countries(n_countries),
                       std::move(values));
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() / ("wtn-" + tag + "-" + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const noexcept { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

// Synthetic `<year>.csv` record files over the shipped country registry.
inline void write_year_files(const std::filesystem::path& dir, std::initializer_list<int> years,
                             double density = 0.1) {
    const auto countries = CountryRegistry::from_csv(WTN_TEST_DATA_DIR "/countries.csv");
    const auto products = ProductRegistry::sitc_sections();
    for (const int year : years) {
        synthetic::TensorSpec spec;
        spec.year = year;
        spec.density = density;
        spec.seed = static_cast<std::uint64_t>(year);
        std::ofstream out(dir / (std::to_string(year) + ".csv"));
        synthetic::write_records(synthetic::random_tensor(spec, countries, products), out, 0.1,
                                 static_cast<std::uint64_t>(year) + 1);
    }
}

}  // namespace wtn::fixtures
