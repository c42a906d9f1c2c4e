#pragma once

#include <string>
#include <vector>

#include "tracegraph/metrics/ged.hpp"
#include "tracegraph/pipeline/store.hpp"

namespace tracegraph::pipeline {

struct GedRow {
    std::string trial_id;
    std::string coder_a;
    std::string coder_b;
    double raw = 0.0;
    double normalized = 0.0;
    double clamped = 0.0;
};

// One row per trial coded by both coders (annotation first, then coding
// result), ordered by trial_id. A non-runnable side scores 1.0.
std::vector<GedRow> reliability(const Store& store, const std::string& coder_a, const std::string& coder_b,
                                const metrics::GedConfig& config = {});

// Header "trial_id,coder_a,coder_b,raw,normalized,clamped"; numbers printed
// with 17 significant digits.
std::string ged_rows_to_csv(const std::vector<GedRow>& rows);

}  // namespace tracegraph::pipeline
