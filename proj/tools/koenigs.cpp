#include <iostream>

#include "koenigs/cli.hpp"

int main(int argc, char** argv) { return koenigs::cli::run(argc, argv, std::cout, std::cerr); }
