#pragma once

#include <chrono>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace tracegraph::pipeline {

struct ChatConfig {
    std::string endpoint = "https://api.openai.com/v1/chat/completions";
    std::string model = "gpt-4o";
    std::string api_key_env = "TRACEGRAPH_API_KEY";
    int max_retries = 4;  // extra tries after the first
    int initial_backoff_ms = 500;
    int timeout_s = 120;

    static ChatConfig from_json(const nlohmann::json& j);
};

struct ChatMessage {
    std::string role;  // system | user | assistant
    std::string content;
};

// Raised when the endpoint cannot produce an answer after all retries.
class ChatUnavailable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Minimal chat-completions client. Network failures, 429 and 5xx answers are
// retried with exponential backoff; other errors fail at once.
class ChatClient {
public:
    using Sleeper = std::function<void(std::chrono::milliseconds)>;

    explicit ChatClient(ChatConfig config, Sleeper sleeper = {});

    // Returns choices[0].message.content.
    std::string complete(const std::vector<ChatMessage>& messages, double temperature);

    const ChatConfig& config() const { return config_; }

private:
    ChatConfig config_;
    Sleeper sleep_;
};

}  // namespace tracegraph::pipeline
