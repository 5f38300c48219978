#include "raa/cli.hpp"

int main(int argc, char** argv) { return raa::run_cli(argc, argv); }
