#include <iostream>

#include "corename/cli.hpp"

int main(int argc, char** argv) { return corename::run(argc, argv, std::cout, std::cerr); }
