#include <iostream>

#include "deloc/cli.hpp"

int main(int argc, char** argv) { return deloc::cli::run(argc, argv, std::cout, std::cerr); }
