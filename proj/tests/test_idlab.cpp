#include "doctest.h"
TEST_CASE("placeholder idlab") { CHECK(true); }
