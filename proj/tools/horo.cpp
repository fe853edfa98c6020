#include "horo/cli.hpp"

int main(int argc, char** argv) { return horo::cli::run(argc, argv); }
