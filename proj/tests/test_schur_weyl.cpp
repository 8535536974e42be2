#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "schurdouble/presets.hpp"

using namespace schurdouble;

TEST_CASE("placeholder") { CHECK(preset("trivial").dim() == 1); }
