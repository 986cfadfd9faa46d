#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <looptheta/numeric.hpp>

int main(int argc, char** argv) {
    looptheta::set_working_precision(50);
    return doctest::Context(argc, argv).run();
}
