// Acceptance suite runner: one PASS/FAIL line per criterion, nonzero exit on
// any failure. The same checks back the `nilkl selftest` subcommand.
#include <iostream>

#include <nilkl/selftest.hpp>

int main() { return nilkl::selftest::run_acceptance(std::cout, false) ? 0 : 1; }
