#include "cvtkit/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return cvtkit::cli::run(argc, argv, std::cout, std::cerr);
}
