#include "weave/cli.hpp"

int main(int argc, char** argv) { return weave::cli_main(argc, argv); }
