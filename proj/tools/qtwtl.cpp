#include "qtwtl/cli.hpp"

int main(int argc, char** argv) { return qtwtl::run_cli(argc, argv); }
