// Copyright 2026 The mtkgnn Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "mtkgnn/cli/commands.hpp"

int main(int argc, char** argv) {
  return mtkgnn::run_cli(argc, argv, std::cout, std::cerr);
}
