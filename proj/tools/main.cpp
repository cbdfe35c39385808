#include <iostream>
#include <string>
#include <vector>

#include "ihcalc/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return ih::run_cli(args, std::cout, std::cerr);
}
