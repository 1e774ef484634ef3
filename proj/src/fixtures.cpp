#include "msi/fixtures.hpp"

#include "msi/error.hpp"
#include "msi/io.hpp"

#include <cmath>
#include <cstdlib>

#ifndef MSI_FIXTURE_DIR
#define MSI_FIXTURE_DIR "fixtures"
#endif

namespace msi {

const std::vector<FixtureInfo>& fixture_registry() {
    static const std::vector<FixtureInfo> registry = {
        {"table1", "table1.csv", "vertical strip sums, 60 strips", 60, 837199.0, 0},
        {"table2", "table2.csv", "horizontal strip sums, 50 strips", 50, 837199.0, 0},
        {"table3", "table3.csv", "vertical partition values, 7 per subinterval", 42, 707439.0, 2},
        {"table4", "table4.csv", "horizontal partition values, 5 per subinterval", 30, 652779.0, 2},
        {"table5", "table5.csv", "vertical ratios and Hurst estimates", 8, 12.881, 1},
        {"table6", "table6.csv", "horizontal ratios and Hurst estimates", 8, 17.31, 1},
        {"table7", "table7.csv", "hourly accumulation, 96 steps", 96, 832723.0, 0},
        {"table8", "table8.csv", "time partition values, 3 per subinterval", 18, 467694.0, 2},
        {"table9", "table9.csv", "time ratios and Hurst estimates", 8, 231.04, 1},
        {"table10", "table10.csv", "sub-rectangle totals, 9 rectangles x 4", 36, 552394.0, 2},
        {"table11", "table11.csv", "actual and predicted rectangle totals", 18, 1157655.0, 2},
    };
    return registry;
}

const FixtureInfo& fixture_info(const std::string& name) {
    for (const auto& f : fixture_registry()) {
        if (f.name == name) return f;
    }
    fail(ErrorCode::InvalidArgument, "unknown fixture '" + name + "'");
}

std::filesystem::path fixture_dir() {
    if (const char* env = std::getenv("MSI_FIXTURES"); env != nullptr && *env != '\0') return env;
    return MSI_FIXTURE_DIR;
}

std::filesystem::path fixture_path(const std::string& name) {
    for (const auto& f : fixture_registry()) {
        if (f.name == name) return fixture_dir() / f.file;
    }
    // Non-table assets (model files) are addressed by file name.
    return fixture_dir() / name;
}

std::vector<FixtureCheck> validate_fixtures() {
    std::vector<FixtureCheck> out;
    for (const auto& f : fixture_registry()) {
        FixtureCheck check{f.name, false, {}};
        try {
            const bool header = f.index_columns > 0;
            std::size_t count = 0;
            double sum = 0.0;
            for (const auto& row : read_csv_rows(fixture_dir() / f.file, header)) {
                for (std::size_t i = static_cast<std::size_t>(f.index_columns); i < row.size(); ++i) {
                    ++count;
                    sum += row[i];
                }
            }
            check.ok = count == f.count && std::abs(sum - f.sum) <= 1e-9 * std::max(1.0, std::abs(f.sum));
            check.detail = "count " + std::to_string(count) + "/" + std::to_string(f.count) + ", sum " +
                           format_fixed(sum, 3) + "/" + format_fixed(f.sum, 3);
        } catch (const Error& e) {
            check.detail = e.what();
        }
        out.push_back(std::move(check));
    }
    return out;
}

}  // namespace msi
