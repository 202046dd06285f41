#include <iostream>

#include "besselw/cli.hpp"

int main(int argc, char** argv) { return besselw::cli::run(argc, argv, std::cout, std::cerr); }
