#include "fsa/cli.hpp"

int main(int argc, char** argv) { return fsa::run_cli(argc, argv); }
