#include "equiaudit/cli.hpp"

int main(int argc, char** argv) { return equiaudit::cli::run(argc, argv); }
