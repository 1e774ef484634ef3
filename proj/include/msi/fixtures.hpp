#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace msi {

/// A bundled data table with the checksum it must reproduce.
struct FixtureInfo {
    std::string name;
    std::string file;
    std::string description;
    std::size_t count;  // numeric data values, excluding index columns
    double sum;         // sum of those values
    int index_columns;  // leading key columns per row (0 for plain series)
};

const std::vector<FixtureInfo>& fixture_registry();
const FixtureInfo& fixture_info(const std::string& name);

/// $MSI_FIXTURES when set, otherwise the directory the library was built against.
std::filesystem::path fixture_dir();
std::filesystem::path fixture_path(const std::string& name);

struct FixtureCheck {
    std::string name;
    bool ok = false;
    std::string detail;
};

/// Recomputes count and sum of every registered fixture.
std::vector<FixtureCheck> validate_fixtures();

}  // namespace msi
