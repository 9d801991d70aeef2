#include "cli.hpp"
#include "corpus_data.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return stereoconj::run(argc, argv, std::cout, std::cerr, stereoconj::kEmbeddedCorpus);
}
