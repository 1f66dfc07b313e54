#include "oamq/cli/commands.hpp"

int main(int argc, char** argv) { return oamq::cli::main(argc, argv); }
