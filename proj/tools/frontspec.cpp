#include <iostream>

#include "frontspec/cli/app.hpp"

int main(int argc, char** argv) {
    return frontspec::cli::run_cli(argc, argv, std::cout, std::cerr);
}
