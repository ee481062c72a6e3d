#include "graphbench/cli.hpp"

int main(int argc, char** argv) { return graphbench::run_cli(argc, argv); }
