#include <iostream>

#include "cranidnc/cli.hpp"

int main(int argc, char** argv)
{
    return cranidnc::cli_main(argc, argv, std::cout, std::cerr);
}
