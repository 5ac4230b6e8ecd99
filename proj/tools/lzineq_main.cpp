#include <iostream>

#include "lzineq/cli.hpp"

int main(int argc, char** argv) { return lzineq::cli::main_entry(argc, argv, std::cout, std::cerr); }
