#include "schucode/cli.hpp"

int main(int argc, char** argv) { return schucode::cli::main_entry(argc, argv); }
