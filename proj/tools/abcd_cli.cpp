#include "abcd/cli.hpp"

int main(int argc, char** argv) { return abcd::cli::run(argc, argv); }
