#include <iostream>

#include "lpoly/cli.hpp"

int main(int argc, char** argv) { return lpoly::run_cli(argc, argv, std::cin, std::cout, std::cerr); }
