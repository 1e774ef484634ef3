#include "msi/predict.hpp"

#include "msi/error.hpp"

#include <cmath>
#include <string>

namespace msi {
namespace {

std::string key_name(IndexPair k) { return "A" + std::to_string(k[0]) + std::to_string(k[1]); }

}  // namespace

void RectangleTotals::set(IndexPair key, std::vector<double> parts) {
    if (parts.empty()) fail(ErrorCode::EmptySet, key_name(key) + " has no sub-rectangles");
    for (double v : parts) {
        if (!std::isfinite(v)) fail(ErrorCode::NonFinite, key_name(key) + " has a non-finite total");
        if (v < 0.0) fail(ErrorCode::Negative, key_name(key) + " has a negative total");
    }
    parts_[key] = std::move(parts);
}

const std::vector<double>& RectangleTotals::parts(IndexPair key) const {
    auto it = parts_.find(key);
    if (it == parts_.end()) fail(ErrorCode::MissingRectangle, key_name(key) + " not present");
    return it->second;
}

double RectangleTotals::total(IndexPair key) const {
    double s = 0.0;
    for (double v : parts(key)) s += v;
    return s;
}

std::map<IndexPair, double> RectangleTotals::totals() const {
    std::map<IndexPair, double> out;
    for (const auto& [k, _] : parts_) out[k] = total(k);
    return out;
}

std::vector<IndexPair> RectangleTotals::keys() const {
    std::vector<IndexPair> out;
    for (const auto& [k, _] : parts_) out.push_back(k);
    return out;
}

double prediction_factor(const MsiModel& model, IndexPair from, IndexPair to) {
    const auto d1 = static_cast<double>(to[0] - from[0]);
    const auto d2 = static_cast<double>(to[1] - from[1]);
    return std::pow(model.lambda[0], d1 * model.hurst[0]) * std::pow(model.lambda[1], d2 * model.hurst[1]);
}

double predict_one(const RectangleTotals& totals, const MsiModel& model, IndexPair initial, IndexPair target) {
    if (target[0] < initial[0] || target[1] < initial[1]) {
        fail(ErrorCode::BackwardPrediction, key_name(target) + " lies before " + key_name(initial));
    }
    const double factor = prediction_factor(model, initial, target);
    double s = 0.0;
    for (double y : totals.parts(initial)) s += factor * y;
    return s;
}

std::map<IndexPair, double> predict_rect(const RectangleTotals& totals, const MsiModel& model, IndexPair initial) {
    if (!totals.contains(initial)) fail(ErrorCode::MissingRectangle, key_name(initial) + " not present");
    std::map<IndexPair, double> out;
    for (const auto& key : totals.keys()) {
        if (key[0] < initial[0] || key[1] < initial[1]) continue;
        out[key] = predict_one(totals, model, initial, key);
    }
    return out;
}

double mape(const std::map<IndexPair, double>& actual, const std::map<IndexPair, double>& predicted,
            const std::set<IndexPair>& exclude) {
    double acc = 0.0;
    std::size_t count = 0;
    for (const auto& [key, y] : actual) {
        if (exclude.count(key) != 0) continue;
        auto it = predicted.find(key);
        if (it == predicted.end()) continue;
        if (y == 0.0) fail(ErrorCode::ZeroActual, key_name(key) + " has zero actual total");
        acc += std::abs(y - it->second) / std::abs(y);
        ++count;
    }
    if (count == 0) fail(ErrorCode::EmptySet, "no rectangles left to score");
    return 100.0 * acc / static_cast<double>(count);
}

Lewis lewis_class(double gamma) {
    if (!(gamma >= 0.0)) fail(ErrorCode::InvalidArgument, "MAPE must be non-negative");
    if (gamma <= 10.0) return Lewis::highly_accurate;
    if (gamma <= 20.0) return Lewis::good;
    if (gamma <= 50.0) return Lewis::reasonable;
    return Lewis::inaccurate;
}

std::string_view to_string(Lewis lewis) {
    switch (lewis) {
        case Lewis::highly_accurate: return "highly_accurate";
        case Lewis::good: return "good";
        case Lewis::reasonable: return "reasonable";
        case Lewis::inaccurate: return "inaccurate";
    }
    return "unknown";
}

PredictionReport evaluate_prediction(const RectangleTotals& totals, const MsiModel& model, IndexPair initial) {
    PredictionReport report;
    report.predicted = predict_rect(totals, model, initial);
    for (const auto& [key, _] : report.predicted) report.actual[key] = totals.total(key);
    for (const auto& [key, yhat] : report.predicted) {
        if (key == initial) continue;
        const double y = report.actual.at(key);
        if (y == 0.0) fail(ErrorCode::ZeroActual, key_name(key) + " has zero actual total");
        report.per_rect_abs_rel_error[key] = std::abs(y - yhat) / y;
    }
    report.mape = mape(report.actual, report.predicted, {initial});
    report.lewis = lewis_class(report.mape);
    return report;
}

}  // namespace msi
