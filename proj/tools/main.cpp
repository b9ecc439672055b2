#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return dfsslab::cli::cli_main(argc, argv, std::cout, std::cerr); }
