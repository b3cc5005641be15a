#include <iostream>

#include "hw/cli.hpp"

int main(int argc, char** argv) { return hw::run_cli(argc, argv, std::cout, std::cerr); }
