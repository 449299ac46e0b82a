// Copyright 2026 The ellfq Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "ellfq/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ellfq::run(args, std::cout, std::cerr);
}
