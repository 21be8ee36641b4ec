#include <sectorflow/cli.hpp>

int main(int argc, char** argv) { return sectorflow::cli::run(argc, argv); }
