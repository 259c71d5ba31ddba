/*
   Copyright 2026 The towerforge Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef TOWERFORGE_DATA_DIR_HPP
#define TOWERFORGE_DATA_DIR_HPP

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "towerforge/error.hpp"

#ifndef TOWERFORGE_DEFAULT_DATA_DIR
#define TOWERFORGE_DEFAULT_DATA_DIR "data/v1"
#endif

namespace towerforge {

/// Golden-data directory: $TOWERFORGE_DATA if set, else the build-time default.
inline std::filesystem::path data_dir() {
    if (const char* env = std::getenv("TOWERFORGE_DATA"); env != nullptr && *env != '\0') return env;
    return TOWERFORGE_DEFAULT_DATA_DIR;
}

inline nlohmann::json load_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::SchemaError, "cannot open " + path.string());
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::SchemaError, path.string() + ": " + e.what());
    }
}

inline nlohmann::json load_data_file(const std::string& name) { return load_json(data_dir() / name); }

}  // namespace towerforge

#endif  // TOWERFORGE_DATA_DIR_HPP
