#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "tracegraph/pipeline/chat.hpp"
#include "tracegraph/pipeline/relevance.hpp"
#include "tracegraph/trace/program.hpp"
#include "tracegraph/validator/validator.hpp"

namespace tracegraph::pipeline {

struct FewShotExample {
    Trial trial;
    std::string trace;
};

struct CorrectionExample {
    std::string trace;
    std::string report;     // rendered ValidationReport
    std::string corrected;
};

// Prompt text is data: see config/prompts/.
struct PromptAssets {
    std::string system;
    std::vector<FewShotExample> few_shot;
    std::string correction_system;
    std::vector<CorrectionExample> correction_examples;
    std::string relevance_system;
};

// Reads <config_dir>/prompts/. Throws std::runtime_error on a missing file or
// a malformed example.
PromptAssets load_prompt_assets(const std::filesystem::path& config_dir);

// What the coder sees about a trial: starting numbers, submitted response,
// response time and transcript.
std::string trial_context(const Trial& trial);

// First attempt: system prompt, few-shot pairs, then the trial. Later
// attempts: correction prompt, correction pairs, then the trial with the
// previous trace and its rendered report.
std::vector<ChatMessage> coding_messages(const PromptAssets& assets, const validator::CodingRequest& request);

// Pulls trace text out of a reply, dropping a surrounding ``` fence if any.
std::string extract_trace(const std::string& reply);

class LlmCoder : public validator::CoderBackend {
public:
    LlmCoder(ChatConfig config, PromptAssets assets, ChatClient::Sleeper sleeper = {});
    std::string name() const override;
    std::string code(const validator::CodingRequest& request) override;

private:
    ChatClient client_;
    PromptAssets assets_;
};

// Asks the chat endpoint; a reply starting with "relevant"/"yes" counts as
// relevant, "irrelevant"/"no" as not. Anything else is treated as unavailable.
class HttpRelevanceClassifier : public RelevanceClassifier {
public:
    HttpRelevanceClassifier(ChatConfig config, std::string system_prompt, ChatClient::Sleeper sleeper = {});
    std::string name() const override { return "chat"; }
    bool relevant(const Trial& trial) override;

private:
    ChatClient client_;
    std::string system_;
};

// Rule-based transcript reader used offline and in tests. Recognizes
// "<a> <op> <b> is <r>" phrases (digits or number words), "start over" or
// "restart", and the submitted response. With probability error_rate
// (seeded per trial) the first attempt misstates one result, so the repair
// loop has something to fix; repairs recompute wrong results and drop
// statements the report points at. Stateless and thread safe.
class HeuristicCoder : public validator::CoderBackend {
public:
    explicit HeuristicCoder(std::uint64_t seed = 0, double error_rate = 0.0, std::string name = "heuristic");
    std::string name() const override { return name_; }
    std::string code(const validator::CodingRequest& request) override;

private:
    std::uint64_t seed_;
    double error_rate_;
    std::string name_;
};

// The error-free reading of a transcript that HeuristicCoder starts from.
trace::TraceProgram transcript_to_program(const Trial& trial);

}  // namespace tracegraph::pipeline
