#include "sns/cli.hpp"

int main(int argc, char** argv) { return sns::run_cli(argc, argv); }
