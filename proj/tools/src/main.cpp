#include <iostream>

#include "sievelab/cli/commands.hpp"

int main(int argc, char** argv) { return sievelab::cli::run_main(argc, argv, std::cout, std::cerr); }
