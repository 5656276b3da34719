#include <iostream>

#include "sigman/cli.hpp"

int main(int argc, char** argv) { return sigman::cli::run(argc, argv, std::cout, std::cerr); }
