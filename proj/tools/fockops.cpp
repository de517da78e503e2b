#include "fockops/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return fockops::run_main(argc, argv, std::cout, std::cerr); }
