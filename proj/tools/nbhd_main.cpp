#include "nbhd/cli.hpp"

int main(int argc, char** argv) { return nbhd::cli::run_main(argc, argv); }
