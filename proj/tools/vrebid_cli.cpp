#include <iostream>

#include "vrebid/cli.hpp"

int main(int argc, char** argv) { return vrebid::run_cli(argc, argv, std::cout, std::cerr); }
