#include "cli.hpp"

int main(int argc, char** argv) { return pixelport::cli::cli_main(argc, argv); }
