#pragma once

#include "ottdb/catalog.hpp"
#include "ottdb/storage.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace testing {

inline std::filesystem::path source_dir() { return OTTDB_SOURCE_DIR; }

inline std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline ottdb::Database fixture_db() {
    auto db = ottdb::builtin_schema();
    ottdb::load_dataset(db, (source_dir() / "fixtures" / "paper").string());
    return db;
}

// Fresh empty directory under the build tree.
inline std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("ottdb_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace testing
