#include <iostream>

#include "tglab/cli.hpp"

int main(int argc, char** argv) { return tglab::cli::run(argc, argv, std::cout, std::cerr); }
