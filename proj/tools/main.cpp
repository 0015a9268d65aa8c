#include <iostream>

#include "ufg/cli.hpp"

int main(int argc, char** argv) { return ufg::run_cli(argc, argv, std::cout, std::cerr); }
