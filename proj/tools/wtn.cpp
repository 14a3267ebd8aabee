#include <iostream>

#include "wtn/cli.hpp"

int main(int argc, char** argv) {
    return wtn::cli::run(argc, argv, std::cout, std::cerr);
}
