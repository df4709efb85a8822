#include <iostream>

#include "oddcover/cli.hpp"

int main(int argc, char **argv) { return oddcover::cli::main(argc, argv, std::cout, std::cerr); }
