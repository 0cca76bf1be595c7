#include <iostream>

#include "vsg/cli.hpp"

int main(int argc, char** argv) { return vsg::run_cli(argc, argv, std::cout, std::cerr); }
