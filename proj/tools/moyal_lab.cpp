#include <iostream>

#include "moyal/harness/experiments.hpp"

int main(int argc, char** argv) { return moyal::harness::run_cli(argc, argv, std::cout, std::cerr); }
