#include <iostream>

#include "ellipdrive/cli.hpp"

int main(int argc, char** argv) { return ellipdrive::run_cli(argc, argv, std::cout, std::cerr); }
