#include <iostream>
#include <string>
#include <vector>

#include "apgeo/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return apgeo::run(args, std::cout, std::cerr);
}
