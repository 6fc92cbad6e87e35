#include <iostream>

#include "bdim/cli.hpp"

int main(int argc, char** argv) { return bdim::run_cli(argc, argv, std::cout, std::cerr); }
