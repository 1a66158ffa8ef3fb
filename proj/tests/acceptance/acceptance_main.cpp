#include <iostream>

#include "acceptance/acceptance.hpp"

int main() {
  const int failures = robinflow::acceptance::run_all(std::cout);
  return failures == 0 ? 0 : 1;
}
