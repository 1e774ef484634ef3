#pragma once

#include "msi/field_model.hpp"

#include <filesystem>
#include <string>

namespace msi {

/// JSON object with keys lambda1, lambda2, H1, H2, Hprime1, Hprime2,
/// breakpoints_a, breakpoints_b, simulatable. Numbers are written in shortest
/// round-trip form, so read(write(m)) == m.
std::string model_to_json(const MsiModel& model);
MsiModel model_from_json(const std::string& text, ModelUse use = ModelUse::analysis);

void write_model(const std::filesystem::path& path, const MsiModel& model);
MsiModel read_model(const std::filesystem::path& path, ModelUse use = ModelUse::analysis);

}  // namespace msi
