#include "foldclust/cli.hpp"

int main(int argc, char** argv) { return foldclust::cli::run(argc, argv); }
