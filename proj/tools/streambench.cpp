#include "streambench/cli.hpp"

int main(int argc, char** argv) { return streambench::cli::run(argc, argv); }
