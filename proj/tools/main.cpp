#include <iostream>

#include "ffvar/cli.hpp"

int main(int argc, char** argv) { return ffvar::cli::run(argc, argv, std::cout, std::cerr); }
