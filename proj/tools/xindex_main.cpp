#include "xindex/cli.hpp"

int main(int argc, char** argv) { return xindex::cli::run(argc, argv); }
