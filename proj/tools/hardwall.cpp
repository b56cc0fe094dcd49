#include <iostream>
#include <string>
#include <vector>

#include "hardwall/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return hardwall::run_cli(args, std::cout, std::cerr);
}
