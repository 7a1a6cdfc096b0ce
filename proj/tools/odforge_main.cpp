#include <iostream>

#include "odforge/cli.hpp"

int main(int argc, char** argv) { return odforge::cli::run(argc, argv, std::cout, std::cerr); }
