#include <iostream>

#include "globalcube/cli.hpp"

int main(int argc, char** argv) { return globalcube::cli::run_main(argc, argv, std::cout, std::cerr); }
