#include "zen/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return zen::cli::run(argc, argv, std::cout, std::cerr); }
