#include "ringnet/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return ringnet::run_cli(argc, argv, std::cout, std::cerr); }
