#include <iostream>
#include <string>
#include <vector>

#include "bellparity/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return bellparity::cli::run(std::move(args), std::cout, std::cerr);
}
