#include <iostream>
#include <string>
#include <vector>

#include "ndc/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return ndc::cli::run(args, std::cout, std::cerr);
}
