#include "cli.hpp"

int main(int argc, char** argv) { return scq::cli::dispatch(argc, argv); }
