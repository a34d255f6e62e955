#include <iostream>

#include "kappa/cli.hpp"

int main(int argc, char** argv) { return kappa::cli::run(argc, argv, std::cout, std::cerr); }
