#include <gcn/cli.hpp>

#include <iostream>

int main(int argc, char** argv) { return gcn::run_cli(argc, argv, std::cout, std::cerr); }
