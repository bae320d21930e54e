#include <iostream>

#include "ginient/cli.hpp"

int main(int argc, char** argv) { return ginient::cli::run(argc, argv, std::cout, std::cerr); }
