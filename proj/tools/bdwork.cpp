#include "bdwork/cli.hpp"

int main(int argc, char** argv) { return bdwork::cli::run(argc, argv); }
