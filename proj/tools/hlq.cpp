#include <iostream>

#include "hlq/cli.hpp"

int main(int argc, char** argv) { return hlq::cli::run(argc, argv, std::cout, std::cerr); }
