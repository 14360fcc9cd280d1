#include <iostream>

#include "ncps/cli.hpp"

int main(int argc, char** argv) { return ncps::cli::run(argc, argv, std::cout, std::cerr); }
