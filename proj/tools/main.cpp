#include "jumpsync/cli.hpp"

int main(int argc, char** argv) { return jumpsync::cli::dispatch(argc, argv); }
