#include <iostream>

#include "cmms/cli.hpp"

int main(int argc, char** argv) {
    return cmms::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
