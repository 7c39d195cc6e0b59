#include <iostream>

#include "bnsaga/cli.hpp"

int main(int argc, char** argv) { return bnsaga::cli::run(argc, argv, std::cout, std::cerr); }
