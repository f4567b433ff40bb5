#include "frdiff/cli.hpp"

int main(int argc, char** argv) { return frdiff::cli::run(argc, argv); }
