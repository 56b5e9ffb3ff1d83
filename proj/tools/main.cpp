#include <iostream>

#include "fillings/cli.hpp"

int main(int argc, char** argv) { return fillings::cli::run(argc, argv, std::cout, std::cerr); }
