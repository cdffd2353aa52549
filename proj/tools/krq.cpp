#include <iostream>

#include "krq/cli.hpp"

int main(int argc, char** argv) { return krq::cli_main(argc, argv, std::cout, std::cerr); }
