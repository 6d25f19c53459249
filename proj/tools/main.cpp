#include "fracclique/cli.hpp"

int main(int argc, char** argv) { return fracclique::cli::run(argc, argv); }
