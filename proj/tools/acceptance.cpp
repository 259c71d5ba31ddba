// Copyright 2026 The towerforge Authors
// SPDX-License-Identifier: Apache-2.0

// Prints one PASS/FAIL line per acceptance criterion; exit 0 iff all pass.

#include <cstdlib>
#include <iostream>

#include "towerforge/cli/acceptance.hpp"

int main(int argc, char** argv) {
    std::uint64_t seed = towerforge::cli::kDefaultSeed;
    if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
    std::cout << "towerforge acceptance, seed " << seed << std::endl;
    bool ok = true;
    for (const auto& c : towerforge::cli::run_acceptance(seed)) {
        std::cout << towerforge::cli::format_line(c) << std::endl;
        ok = ok && c.pass;
    }
    return ok ? 0 : 4;
}
