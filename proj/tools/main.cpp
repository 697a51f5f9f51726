#include "lya/cli.hpp"

int main(int argc, char** argv) { return lya::run(argc, argv); }
