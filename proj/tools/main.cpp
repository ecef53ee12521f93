#include "fpdense/cli.hpp"

int main(int argc, char** argv) { return fpdense::cli::run(argc, argv); }
