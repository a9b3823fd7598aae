#include <iostream>
#include <string>
#include <vector>

#include "distclust/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return distclust::cli::run(args, std::cout, std::cerr);
}
