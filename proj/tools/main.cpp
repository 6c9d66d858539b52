#include <iostream>

#include "isoflow_cli/cli.hpp"

int main(int argc, char** argv) { return isoflow::cli::run(argc, argv, std::cout, std::cerr); }
