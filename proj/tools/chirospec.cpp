#include "chirospec/commands.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return chirospec::run_cli(argc, argv, std::cout, std::cerr);
}
