#include "tracegraph/pipeline/chat.hpp"

#include <cstdlib>
#include <thread>

#include "httplib.h"

namespace tracegraph::pipeline {

using nlohmann::json;

ChatConfig ChatConfig::from_json(const json& j) {
    ChatConfig c;
    c.endpoint = j.value("endpoint", c.endpoint);
    c.model = j.value("model", c.model);
    c.api_key_env = j.value("api_key_env", c.api_key_env);
    c.max_retries = j.value("max_retries", c.max_retries);
    c.initial_backoff_ms = j.value("initial_backoff_ms", c.initial_backoff_ms);
    c.timeout_s = j.value("timeout_s", c.timeout_s);
    return c;
}

ChatClient::ChatClient(ChatConfig config, Sleeper sleeper) : config_(std::move(config)), sleep_(std::move(sleeper)) {
    if (!sleep_) sleep_ = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
}

namespace {

// "https://host:port/v1/chat" -> {"https://host:port", "/v1/chat"}
std::pair<std::string, std::string> split_url(const std::string& url) {
    auto scheme = url.find("://");
    if (scheme == std::string::npos) throw ChatUnavailable("endpoint is not an absolute URL: " + url);
    auto path = url.find('/', scheme + 3);
    if (path == std::string::npos) return {url, "/"};
    return {url.substr(0, path), url.substr(path)};
}

}  // namespace

std::string ChatClient::complete(const std::vector<ChatMessage>& messages, double temperature) {
    const char* key = std::getenv(config_.api_key_env.c_str());
    if (!key || !*key) throw ChatUnavailable("environment variable " + config_.api_key_env + " is not set");

    json body;
    body["model"] = config_.model;
    body["temperature"] = temperature;
    body["messages"] = json::array();
    for (const auto& m : messages) body["messages"].push_back({{"role", m.role}, {"content", m.content}});
    const std::string payload = body.dump();

    auto [base, path] = split_url(config_.endpoint);
    httplib::Client client(base);
    client.set_connection_timeout(config_.timeout_s, 0);
    client.set_read_timeout(config_.timeout_s, 0);
    client.set_bearer_token_auth(key);

    std::string last_error;
    auto backoff = std::chrono::milliseconds(config_.initial_backoff_ms);
    for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
        if (attempt > 0) {
            sleep_(backoff);
            backoff *= 2;
        }
        auto res = client.Post(path, payload, "application/json");
        if (!res) {
            last_error = "request failed: " + httplib::to_string(res.error());
            continue;
        }
        if (res->status == 429 || res->status >= 500) {
            last_error = "HTTP " + std::to_string(res->status);
            continue;
        }
        if (res->status != 200) throw ChatUnavailable("HTTP " + std::to_string(res->status) + ": " + res->body);
        try {
            auto j = json::parse(res->body);
            return j.at("choices").at(0).at("message").at("content").get<std::string>();
        } catch (const json::exception& e) {
            throw ChatUnavailable(std::string("malformed completion: ") + e.what());
        }
    }
    throw ChatUnavailable("gave up after " + std::to_string(config_.max_retries + 1) + " tries: " + last_error);
}

}  // namespace tracegraph::pipeline
