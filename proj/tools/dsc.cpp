#include "dsc/cli.hpp"

int main(int argc, char** argv) { return dsc::cli::main(argc, argv); }
