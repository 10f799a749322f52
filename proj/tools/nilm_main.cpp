#include <iostream>

#include "nilm/cli.hpp"

int main(int argc, char** argv) { return nilm::cli::run(argc, argv, std::cout, std::cerr); }
