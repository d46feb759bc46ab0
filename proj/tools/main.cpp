#include "pima/cli.hpp"

int main(int argc, char** argv) { return pima::cli::run(argc, argv); }
