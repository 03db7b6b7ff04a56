#include <iostream>

#include "sml/cli.hpp"

int main(int argc, char** argv) { return sml::cli::run(argc, argv, std::cin, std::cout, std::cerr); }
