#include <iostream>
#include <string>
#include <vector>

#include <qrec/cli.hpp>

int main(int argc, char **argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return qrec::cli::run(args, std::cout, std::cerr);
}
