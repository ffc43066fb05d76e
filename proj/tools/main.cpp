#include "cli.hpp"

int main(int argc, char** argv) {
    return hhgso::cli::run_cli(argc, argv);
}
