#include "semiclass/cli/run.hpp"

int main(int argc, char** argv) { return semiclass::cli::main_entry(argc, argv); }
