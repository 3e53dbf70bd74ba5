#include <iostream>

#include "oraclesim/cli.hpp"

int main(int argc, char **argv) { return oraclesim::run_cli(argc, argv, std::cout, std::cerr); }
