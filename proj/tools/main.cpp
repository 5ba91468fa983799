#include "hypdiff/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return hypdiff::run_cli(argc, argv, std::cout, std::cerr);
}
