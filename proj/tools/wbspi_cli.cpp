#include <iostream>
#include <string>
#include <vector>

#include "wbspi/regression.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return wbspi::cli_main(args, std::cout, std::cerr);
}
