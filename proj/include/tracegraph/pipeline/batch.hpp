#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tracegraph/pipeline/store.hpp"

namespace tracegraph::pipeline {

struct BatchOptions {
    validator::RepairPolicy policy;
    std::size_t parallelism = 1;
    bool force = false;  // recode trials that already have a clean result
};

struct BatchSummary {
    std::size_t coded = 0;
    std::size_t uncoded = 0;
    std::size_t skipped = 0;
    std::vector<std::string> failures;  // "trial_id: reason"
};

// Runs the repair loop over `trials` on a bounded worker pool. The coder is
// shared by the workers and must be thread safe. Results reach the store in
// input order whatever order the workers finish in, so the files are
// reproducible. A trial whose coder fails is stored as uncoded; the batch
// always completes.
BatchSummary batch_code(const std::vector<Trial>& trials, validator::CoderBackend& coder, Store& store,
                        const BatchOptions& options = {});

}  // namespace tracegraph::pipeline
