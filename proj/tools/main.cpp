#include <iostream>

#include "shiftpred/cli.hpp"

int main(int argc, char** argv) { return shiftpred::run(argc, argv, std::cout, std::cerr); }
