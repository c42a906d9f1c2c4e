#include "tracegraph/pipeline/batch.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <thread>
#include <variant>

#include "tracegraph/core/errors.hpp"

namespace tracegraph::pipeline {

namespace {

struct Failure {
    std::string message;
};

using Outcome = std::variant<std::monostate, validator::CodingResult, Failure>;

}  // namespace

BatchSummary batch_code(const std::vector<Trial>& trials, validator::CoderBackend& coder, Store& store,
                        const BatchOptions& options) {
    options.policy.check();
    BatchSummary summary;
    const std::string coder_name = coder.name();

    std::vector<const Trial*> todo;
    for (const auto& t : trials) {
        auto prior = store.result(t.trial_id, coder_name);
        if (!options.force && prior && prior->clean()) {
            ++summary.skipped;
            continue;
        }
        todo.push_back(&t);
    }

    std::vector<Outcome> outcomes(todo.size());
    std::vector<bool> done(todo.size(), false);
    std::size_t next_to_write = 0;
    std::mutex mu;
    std::atomic<std::size_t> next_job{0};

    // Flushes the finished prefix so writes stay in input order.
    auto flush = [&] {
        while (next_to_write < todo.size() && done[next_to_write]) {
            auto& out = outcomes[next_to_write];
            const auto& id = todo[next_to_write]->trial_id;
            if (auto* r = std::get_if<validator::CodingResult>(&out)) {
                store.add_result(*r);
                ++summary.coded;
            } else {
                const auto& msg = std::get<Failure>(out).message;
                store.add_uncoded(id, coder_name, msg);
                ++summary.uncoded;
                summary.failures.push_back(id + ": " + msg);
            }
            out = std::monostate{};
            ++next_to_write;
        }
    };

    auto worker = [&] {
        for (std::size_t i = next_job++; i < todo.size(); i = next_job++) {
            Outcome out;
            try {
                out = validator::repair_loop(*todo[i], coder, options.policy);
            } catch (const std::exception& e) {
                out = Failure{e.what()};
            }
            std::lock_guard lock(mu);
            outcomes[i] = std::move(out);
            done[i] = true;
            flush();
        }
    };

    std::size_t n = std::clamp<std::size_t>(options.parallelism, 1, std::max<std::size_t>(todo.size(), 1));
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < n; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return summary;
}

}  // namespace tracegraph::pipeline
