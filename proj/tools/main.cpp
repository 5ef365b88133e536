#include "swgate/cli_runner.hpp"

int main(int argc, char** argv) { return swgate::cli::run_cli(argc, argv); }
