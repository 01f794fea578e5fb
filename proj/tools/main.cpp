#include "holoform/cli.hpp"

int main(int argc, char** argv) { return holoform::run_cli(argc, argv); }
