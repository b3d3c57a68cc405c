#include "infoflow/cli.hpp"

int main(int argc, char** argv) { return infoflow::cli_main(argc, argv); }
