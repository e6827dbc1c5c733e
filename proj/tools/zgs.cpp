#include <iostream>

#include "zgs/cli.hpp"

int main(int argc, char** argv) { return zgs::run_cli(argc, argv, std::cout, std::cerr); }
