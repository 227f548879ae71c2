#include <iostream>

#include "aeq/cli.hpp"

int main(int argc, char** argv) { return aeq::cli::run(argc, argv, std::cin, std::cout, std::cerr); }
