// Writes a synthetic trade-record file over the shipped country registry, for
// trying out the `wtn` commands without real trade data.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "wtn/synthetic.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Synthetic trade records", "wtn-synth"};
    wtn::synthetic::TensorSpec spec;
    std::string registry = WTN_DEFAULT_COUNTRY_REGISTRY;
    std::string output;
    double mirror_gap = 0.1;
    app.add_option("--year", spec.year);
    app.add_option("--density", spec.density)->check(CLI::Range(0.0, 1.0));
    app.add_option("--seed", spec.seed);
    app.add_option("--mirror-gap", mirror_gap, "Relative under-reporting of exporter mirror records");
    app.add_option("--country-registry", registry);
    app.add_option("--output,-o", output, "Output file (default stdout)");
    CLI11_PARSE(app, argc, argv);

    try {
        const auto countries = wtn::CountryRegistry::from_csv(registry);
        const auto products = wtn::ProductRegistry::sitc_sections();
        const auto tensor = wtn::synthetic::random_tensor(spec, countries, products);
        if (output.empty()) {
            wtn::synthetic::write_records(tensor, std::cout, mirror_gap, spec.seed + 1);
        } else {
            std::ofstream out(output);
            wtn::synthetic::write_records(tensor, out, mirror_gap, spec.seed + 1);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
