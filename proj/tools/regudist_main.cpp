#include <iostream>
#include <string>
#include <vector>

#include "regudist/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    return regudist::run_cli(args, std::cout, std::cerr);
}
