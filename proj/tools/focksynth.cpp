#include <iostream>

#include "focksynth/cli.hpp"

int main(int argc, char** argv) { return focksynth::run_cli(argc, argv, std::cout, std::cerr); }
