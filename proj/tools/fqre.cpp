#include "fqre/cli.hpp"

int
main(int argc, char** argv)
{
    return fqre::cli::main(argc, argv);
}
