#include "tracegraph/pipeline/reliability.hpp"

#include <algorithm>
#include <cstdio>

#include "tracegraph/core/errors.hpp"

namespace tracegraph::pipeline {

std::vector<GedRow> reliability(const Store& store, const std::string& coder_a, const std::string& coder_b,
                                const metrics::GedConfig& config) {
    std::vector<GedRow> rows;
    auto trials = store.trials();
    std::sort(trials.begin(), trials.end(), [](const Trial& x, const Trial& y) { return x.trial_id < y.trial_id; });
    for (const auto& t : trials) {
        auto ga = store.graph_for(t.trial_id, coder_a);
        auto gb = store.graph_for(t.trial_id, coder_b);
        if (!ga || !gb) continue;
        GedRow row{t.trial_id, coder_a, coder_b};
        try {
            auto s = metrics::normalized_ged_scores(*ga, *gb, config);
            row.raw = s.raw;
            row.normalized = s.normalized;
            row.clamped = s.clamped;
        } catch (const RootMismatch&) {
            // The coders disagree on the starting numbers: as far apart as
            // a non-runnable trace.
            row.normalized = row.clamped = 1.0;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string ged_rows_to_csv(const std::vector<GedRow>& rows) {
    std::string out = "trial_id,coder_a,coder_b,raw,normalized,clamped\n";
    char buf[96];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, ",%.17g,%.17g,%.17g\n", r.raw, r.normalized, r.clamped);
        out += r.trial_id + "," + r.coder_a + "," + r.coder_b + buf;
    }
    return out;
}

}  // namespace tracegraph::pipeline
