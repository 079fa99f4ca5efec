#include "randmil/cli.hpp"

int main(int argc, char** argv) { return randmil::cli::run(argc, argv); }
