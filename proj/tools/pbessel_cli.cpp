#include "pbessel/cli.hpp"

int main(int argc, char** argv) { return pbessel::cli::main_entry(argc, argv); }
