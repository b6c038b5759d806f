#include <iostream>
#include <string>
#include <vector>

#include "rfis/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return rfis::run_subcommand(args, std::cout, std::cerr);
}
