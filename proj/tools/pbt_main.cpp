#include "pbt/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return pbt::cli::run_cli(argc, argv, std::cout, std::cerr); }
