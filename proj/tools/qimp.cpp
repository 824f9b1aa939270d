#include "qimp/cli.hpp"

int main(int argc, char** argv) {
    return qimp::cli::run(argc, argv);
}
