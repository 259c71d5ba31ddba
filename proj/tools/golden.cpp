// Copyright 2026 The towerforge Authors
// SPDX-License-Identifier: Apache-2.0

// Expands catalog source strings into canonical terms and checksums.
// Without --write it only reports entries whose stored expansion is stale.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "towerforge/catalog/golden.hpp"

int main(int argc, char** argv) {
    CLI::App app{"towerforge-golden: regenerate or audit golden catalog data"};
    std::string path = (towerforge::data_dir() / "catalog.json").string();
    bool write = false;
    app.add_option("--catalog", path, "catalog file");
    app.add_flag("--write", write, "rewrite expanded terms and checksums in place");
    CLI11_PARSE(app, argc, argv);
    try {
        const auto cat = towerforge::catalog::Catalog::load(path);
        if (write) {
            const auto j = cat.regenerated();
            std::ofstream(path) << j.dump(1) << "\n";
            std::cout << "wrote " << cat.entries().size() << " entries to " << path << "\n";
            return 0;
        }
        int stale = 0;
        for (const auto& r : towerforge::catalog::audit(cat)) {
            if (r.expansion_matches && r.checksum_matches) continue;
            ++stale;
            std::cout << "stale: " << r.id << "\n";
        }
        std::cout << cat.entries().size() - stale << "/" << cat.entries().size() << " entries current\n";
        return stale ? 4 : 0;
    } catch (const towerforge::Error& e) {
        std::cerr << e.what() << "\n";
        return 3;
    }
}
