#include "tracegraph/pipeline/server.hpp"

#include "httplib.h"

#include "tracegraph/core/graph_io.hpp"
#include "tracegraph/pipeline/records.hpp"
#include "tracegraph/pipeline/reliability.hpp"

namespace tracegraph::pipeline {

using nlohmann::json;

namespace {

void send(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

void fail(httplib::Response& res, int status, const std::string& code, const std::string& message,
          json extra = json::object()) {
    extra["code"] = code;
    extra["message"] = message;
    send(res, status, extra);
}

json diagnostics_json(const std::vector<trace::Diagnostic>& diags) {
    json out = json::array();
    for (const auto& d : diags) out.push_back({{"line", d.line}, {"column", d.column}, {"message", d.to_string()}});
    return out;
}

json annotation_json(const Annotation& a) {
    return {{"trial_id", a.trial_id},
            {"coder", a.coder},
            {"version", a.version},
            {"source", a.source},
            {"graph", a.graph ? graph_to_json(*a.graph) : json(nullptr)},
            {"report", report_to_json(a.report)},
            {"clean", a.report.clean()},
            {"coding_time_s", a.coding_time_s ? json(*a.coding_time_s) : json(nullptr)}};
}

std::optional<std::size_t> query_size(const httplib::Request& req, const char* name, std::size_t fallback) {
    if (!req.has_param(name)) return fallback;
    try {
        auto v = req.get_param_value(name);
        std::size_t used = 0;
        long long n = std::stoll(v, &used);
        if (used != v.size() || n < 0) return std::nullopt;
        return static_cast<std::size_t>(n);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

// The source of a POST /validate: a JSON {"source": ...} body or raw text.
std::optional<std::string> trace_source(const httplib::Request& req) {
    if (req.get_header_value("Content-Type").find("application/json") == std::string::npos) return req.body;
    try {
        auto j = json::parse(req.body);
        if (j.contains("source") && j["source"].is_string()) return j["source"].get<std::string>();
    } catch (const json::exception&) {
    }
    return std::nullopt;
}

}  // namespace

std::unique_ptr<httplib::Server> make_server(Store& store) {
    auto srv = std::make_unique<httplib::Server>();
    Store* st = &store;

    srv->Get("/trials", [st](const httplib::Request& req, httplib::Response& res) {
        auto offset = query_size(req, "offset", 0);
        auto limit = query_size(req, "limit", 50);
        if (!offset || !limit || *limit == 0 || *limit > 500) {
            return fail(res, 400, "bad_request", "offset must be >= 0 and limit in 1..500");
        }
        auto trials = st->trials();
        json items = json::array();
        for (std::size_t i = *offset; i < trials.size() && i < *offset + *limit; ++i) {
            const auto& t = trials[i];
            items.push_back({{"trial_id", t.trial_id},
                             {"participant_id", t.participant_id},
                             {"problem", t.problem},
                             {"correct", t.correct}});
        }
        send(res, 200, {{"total", trials.size()}, {"offset", *offset}, {"limit", *limit}, {"trials", items}});
    });

    srv->Get(R"(/trials/([^/]+))", [st](const httplib::Request& req, httplib::Response& res) {
        auto t = st->trial(req.matches[1]);
        if (!t) return fail(res, 404, "unknown_trial", "no trial '" + std::string(req.matches[1]) + "'");
        json body = trial_to_json(*t);
        auto verdicts = st->verdicts();
        if (auto it = verdicts.find(t->trial_id); it != verdicts.end()) body["status"] = it->second.status;
        send(res, 200, body);
    });

    srv->Post("/validate", [](const httplib::Request& req, httplib::Response& res) {
        auto source = trace_source(req);
        if (!source) return fail(res, 400, "bad_request", "expected {\"source\": string} or a text body");
        auto v = validator::validate(*source);
        if (!v.graph) {
            return fail(res, 400, "malformed_trace", "trace does not parse",
                        {{"diagnostics", diagnostics_json(v.diagnostics)}, {"report", report_to_json(v.report)}});
        }
        send(res, 200, {{"graph", graph_to_json(*v.graph)},
                        {"report", report_to_json(v.report)},
                        {"clean", v.report.clean()},
                        {"rendered", v.report.render()}});
    });

    srv->Get(R"(/annotations/([^/]+))", [st](const httplib::Request& req, httplib::Response& res) {
        if (!st->trial(req.matches[1])) return fail(res, 404, "unknown_trial", "no such trial");
        json items = json::array();
        for (const auto& a : st->annotations(req.matches[1])) items.push_back(annotation_json(a));
        send(res, 200, {{"annotations", items}});
    });

    srv->Get(R"(/annotations/([^/]+)/([^/]+))", [st](const httplib::Request& req, httplib::Response& res) {
        if (!st->trial(req.matches[1])) return fail(res, 404, "unknown_trial", "no such trial");
        auto a = st->annotation(req.matches[1], req.matches[2]);
        if (!a) return fail(res, 404, "no_annotation", "this coder has not annotated the trial");
        send(res, 200, annotation_json(*a));
    });

    srv->Put(R"(/annotations/([^/]+)/([^/]+))", [st](const httplib::Request& req, httplib::Response& res) {
        const std::string trial_id = req.matches[1], coder = req.matches[2];
        if (!st->trial(trial_id)) return fail(res, 404, "unknown_trial", "no trial '" + trial_id + "'");
        json body;
        try {
            body = json::parse(req.body);
        } catch (const json::exception&) {
            return fail(res, 400, "bad_request", "body is not JSON");
        }
        if (!body.is_object() || !body.contains("source") || !body["source"].is_string() ||
            !body.value("version", json(0)).is_number_unsigned()) {
            return fail(res, 400, "bad_request", "expected {\"source\": string, \"version\": integer >= 0}");
        }
        const std::string source = body["source"];
        auto check = validator::validate(source);
        if (!check.graph) {
            return fail(res, 400, "malformed_trace", "trace does not parse",
                        {{"diagnostics", diagnostics_json(check.diagnostics)}});
        }
        std::optional<double> seconds;
        if (body.contains("coding_time_s") && body["coding_time_s"].is_number()) seconds = body["coding_time_s"];
        try {
            auto a = st->put_annotation(trial_id, coder, source, body.value("version", std::uint64_t{0}), seconds);
            send(res, 200, annotation_json(a));
        } catch (const VersionConflict& e) {
            fail(res, 409, "version_conflict", e.what(), {{"current", annotation_json(e.current())}});
        }
    });

    srv->Get(R"(/graphs/([^/]+)/([^/]+)\.dot)", [st](const httplib::Request& req, httplib::Response& res) {
        if (!st->trial(req.matches[1])) return fail(res, 404, "unknown_trial", "no such trial");
        auto g = st->graph_for(req.matches[1], req.matches[2]);
        if (!g) return fail(res, 404, "no_graph", "this coder has no graph for the trial");
        if (!*g) return fail(res, 404, "no_graph", "the stored trace is not runnable");
        res.set_content(graph_to_dot(**g, std::string(req.matches[1])), "text/vnd.graphviz");
    });

    srv->Get("/reliability", [st](const httplib::Request& req, httplib::Response& res) {
        if (!req.has_param("coder_a") || !req.has_param("coder_b")) {
            return fail(res, 400, "bad_request", "coder_a and coder_b are required");
        }
        auto rows = reliability(*st, req.get_param_value("coder_a"), req.get_param_value("coder_b"));
        json items = json::array();
        double sum = 0;
        for (const auto& r : rows) {
            items.push_back(
                {{"trial_id", r.trial_id}, {"raw", r.raw}, {"normalized", r.normalized}, {"clamped", r.clamped}});
            sum += r.clamped;
        }
        send(res, 200, {{"coder_a", req.get_param_value("coder_a")},
                        {"coder_b", req.get_param_value("coder_b")},
                        {"rows", items},
                        {"mean_clamped", rows.empty() ? json(nullptr) : json(sum / rows.size())}});
    });

    srv->set_error_handler([](const httplib::Request&, httplib::Response& res) {
        if (res.body.empty()) {
            fail(res, res.status, res.status == 404 ? "not_found" : "error", httplib::status_message(res.status));
        }
    });
    srv->set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        std::string what = "internal error";
        try {
            std::rethrow_exception(ep);
        } catch (const std::exception& e) {
            what = e.what();
        } catch (...) {
        }
        fail(res, 500, "internal", what);
    });
    return srv;
}

bool serve(Store& store, const std::string& host, int port) {
    auto srv = make_server(store);
    return srv->listen(host, port);
}

}  // namespace tracegraph::pipeline
