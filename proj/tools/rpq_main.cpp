#include <iostream>
#include <string>
#include <vector>

#include "rpq/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return rpq::cli::run(std::move(args), std::cout, std::cerr);
}
