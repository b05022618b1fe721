#include "cli/commands.hpp"

int main(int argc, char** argv) { return ellt::cli::run_cli(argc, argv); }
