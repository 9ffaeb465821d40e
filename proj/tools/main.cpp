#include "cli.hpp"

int main(int argc, char** argv) { return abconvex::cli::run(argc, argv); }
