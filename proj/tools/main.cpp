#include <iostream>

#include "kellyfreq/cli.hpp"

int main(int argc, char** argv) {
    return kellyfreq::run_cli(argc, argv, std::cout, std::cerr);
}
