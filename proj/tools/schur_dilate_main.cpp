#include "schur_dilate/cli.hpp"

int main(int argc, char** argv) { return schur_dilate::cli::run(argc, argv); }
