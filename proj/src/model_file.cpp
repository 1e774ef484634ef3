#include "msi/model_file.hpp"

#include "msi/error.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>

namespace msi {

using nlohmann::json;

std::string model_to_json(const MsiModel& model) {
    const auto a = model.breakpoints_a.points();
    const auto b = model.breakpoints_b.points();
    json j;
    j["lambda1"] = model.lambda[0];
    j["lambda2"] = model.lambda[1];
    j["H1"] = model.hurst[0];
    j["H2"] = model.hurst[1];
    j["Hprime1"] = model.hprime1;
    j["Hprime2"] = model.hprime2;
    j["breakpoints_a"] = std::vector<double>(a.begin(), a.end());
    j["breakpoints_b"] = std::vector<double>(b.begin(), b.end());
    j["simulatable"] = model.simulatable();
    return j.dump(2);
}

MsiModel model_from_json(const std::string& text, ModelUse use) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        fail(ErrorCode::NonNumeric, std::string("model file is not valid JSON: ") + e.what());
    }
    MsiModel model;
    try {
        model.lambda = {j.at("lambda1").get<double>(), j.at("lambda2").get<double>()};
        model.hurst = {j.at("H1").get<double>(), j.at("H2").get<double>()};
        model.hprime1 = j.at("Hprime1").get<std::vector<double>>();
        model.hprime2 = j.at("Hprime2").get<std::vector<double>>();
        model.breakpoints_a = Breakpoints(j.at("breakpoints_a").get<std::vector<double>>());
        model.breakpoints_b = Breakpoints(j.at("breakpoints_b").get<std::vector<double>>());
    } catch (const json::exception& e) {
        fail(ErrorCode::InvalidArgument, std::string("model file field: ") + e.what());
    }
    // "simulatable" is derived; a stored value that disagrees is stale, not authoritative.
    return validate_model(model, use);
}

void write_model(const std::filesystem::path& path, const MsiModel& model) {
    std::ofstream out(path);
    if (!out) fail(ErrorCode::Io, "cannot write " + path.string());
    out << model_to_json(model) << '\n';
}

MsiModel read_model(const std::filesystem::path& path, ModelUse use) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::Io, "cannot open " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return model_from_json(ss.str(), use);
}

}  // namespace msi
