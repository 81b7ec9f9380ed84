#include "cli/app.h"

#include <iostream>

int main(int argc, char** argv) {
    return mftk::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
