#pragma once

#include "msi/field_model.hpp"

#include <map>
#include <set>
#include <string_view>
#include <vector>

namespace msi {

/// Accumulated precipitation per rectangle (k1, k2), 1-based, each held as its
/// sub-rectangle totals Y_{i,k1k2} (one entry when the rectangle is not split).
class RectangleTotals {
public:
    RectangleTotals() = default;

    void set(IndexPair key, std::vector<double> parts);
    [[nodiscard]] bool contains(IndexPair key) const { return parts_.count(key) != 0; }
    [[nodiscard]] const std::vector<double>& parts(IndexPair key) const;
    [[nodiscard]] double total(IndexPair key) const;
    [[nodiscard]] std::map<IndexPair, double> totals() const;
    [[nodiscard]] std::vector<IndexPair> keys() const;
    [[nodiscard]] std::size_t size() const noexcept { return parts_.size(); }

private:
    std::map<IndexPair, std::vector<double>> parts_;
};

/// lambda1^{(l1-k1)H1} lambda2^{(l2-k2)H2}.
double prediction_factor(const MsiModel& model, IndexPair from, IndexPair to);

/// Predicted totals of every rectangle at or beyond `initial` on both axes, each
/// sub-rectangle scaled from its counterpart in the initial rectangle.
std::map<IndexPair, double> predict_rect(const RectangleTotals& totals, const MsiModel& model, IndexPair initial);

/// Single target; BackwardPrediction when the target lies before `initial`.
double predict_one(const RectangleTotals& totals, const MsiModel& model, IndexPair initial, IndexPair target);

/// Mean absolute percentage error over keys present in both maps and not excluded.
double mape(const std::map<IndexPair, double>& actual, const std::map<IndexPair, double>& predicted,
            const std::set<IndexPair>& exclude = {});

enum class Lewis { highly_accurate, good, reasonable, inaccurate };

Lewis lewis_class(double gamma);
std::string_view to_string(Lewis lewis);

struct PredictionReport {
    std::map<IndexPair, double> predicted;
    std::map<IndexPair, double> actual;
    std::map<IndexPair, double> per_rect_abs_rel_error;
    double mape = 0.0;
    Lewis lewis = Lewis::highly_accurate;
};

/// Predicts from `initial` and scores every other predicted rectangle.
PredictionReport evaluate_prediction(const RectangleTotals& totals, const MsiModel& model, IndexPair initial);

}  // namespace msi
