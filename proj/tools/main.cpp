#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return tracegraph::cli::run(argc, argv, std::cout, std::cerr); }
