#include <iostream>

#include "finv/cli.hpp"

int main(int argc, char** argv) { return finv::cli::main_entry(argc, argv, std::cout, std::cerr); }
