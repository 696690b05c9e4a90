#include <iostream>

#include "rankmetric/cli.hpp"

int main(int argc, char** argv) { return rankmetric::cli::run(argc, argv, std::cout, std::cerr); }
