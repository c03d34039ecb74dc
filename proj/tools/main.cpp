#include "proxyvar/cli.hpp"

int main(int argc, char** argv) { return proxyvar::cli::run(argc, argv); }
