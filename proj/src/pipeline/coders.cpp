#include "tracegraph/pipeline/coders.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "tracegraph/core/errors.hpp"
#include "tracegraph/pipeline/records.hpp"
#include "tracegraph/trace/parser.hpp"

namespace tracegraph::pipeline {

using nlohmann::json;

namespace {

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + p.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<json> read_jsonl(const std::filesystem::path& p) {
    std::vector<json> out;
    std::istringstream in(read_file(p));
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        out.push_back(json::parse(line));
    }
    return out;
}

}  // namespace

PromptAssets load_prompt_assets(const std::filesystem::path& config_dir) {
    const auto dir = config_dir / "prompts";
    PromptAssets a;
    a.system = read_file(dir / "coder_system.txt");
    a.correction_system = read_file(dir / "correction_system.txt");
    a.relevance_system = read_file(dir / "relevance_system.txt");
    try {
        for (const auto& j : read_jsonl(dir / "few_shot.jsonl")) {
            a.few_shot.push_back({trial_from_json(j.at("trial")), j.at("trace").get<std::string>()});
        }
        for (const auto& j : read_jsonl(dir / "correction_examples.jsonl")) {
            a.correction_examples.push_back({j.at("trace").get<std::string>(), j.at("report").get<std::string>(),
                                             j.at("corrected").get<std::string>()});
        }
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("bad prompt example: ") + e.what());
    }
    return a;
}

std::string trial_context(const Trial& t) {
    std::ostringstream out;
    out << "Starting numbers: " << t.problem[0] << ' ' << t.problem[1] << ' ' << t.problem[2] << ' ' << t.problem[3]
        << "\nSubmitted response: " << (t.response ? *t.response : "(none)")
        << "\nResponse time: " << t.response_time_s << " s\nTranscript:\n"
        << t.transcript << '\n';
    return out.str();
}

std::vector<ChatMessage> coding_messages(const PromptAssets& assets, const validator::CodingRequest& req) {
    std::vector<ChatMessage> m;
    if (!req.previous) {
        m.push_back({"system", assets.system});
        for (const auto& ex : assets.few_shot) {
            m.push_back({"user", trial_context(ex.trial)});
            m.push_back({"assistant", ex.trace});
        }
        m.push_back({"user", trial_context(req.trial)});
        return m;
    }
    m.push_back({"system", assets.correction_system});
    for (const auto& ex : assets.correction_examples) {
        m.push_back({"user", "Trace:\n" + ex.trace + "\nProblems:\n" + ex.report});
        m.push_back({"assistant", ex.corrected});
    }
    m.push_back({"user", trial_context(req.trial) + "\nTrace:\n" + req.previous->source + "\nProblems:\n" +
                             req.previous->report.render()});
    return m;
}

std::string extract_trace(const std::string& reply) {
    auto open = reply.find("```");
    if (open == std::string::npos) return reply;
    auto body = reply.find('\n', open);
    if (body == std::string::npos) return reply;
    auto close = reply.find("```", body);
    return reply.substr(body + 1, close == std::string::npos ? std::string::npos : close - body - 1);
}

LlmCoder::LlmCoder(ChatConfig config, PromptAssets assets, ChatClient::Sleeper sleeper)
    : client_(std::move(config), std::move(sleeper)), assets_(std::move(assets)) {}

std::string LlmCoder::name() const { return "chat:" + client_.config().model; }

std::string LlmCoder::code(const validator::CodingRequest& request) {
    try {
        return extract_trace(client_.complete(coding_messages(assets_, request), request.temperature));
    } catch (const ChatUnavailable& e) {
        throw CoderUnavailable(e.what());
    }
}

HttpRelevanceClassifier::HttpRelevanceClassifier(ChatConfig config, std::string system_prompt,
                                                 ChatClient::Sleeper sleeper)
    : client_(std::move(config), std::move(sleeper)), system_(std::move(system_prompt)) {}

bool HttpRelevanceClassifier::relevant(const Trial& trial) {
    std::string reply;
    try {
        reply = client_.complete({{"system", system_}, {"user", trial.transcript}}, 0.0);
    } catch (const ChatUnavailable& e) {
        throw ClassifierUnavailable(e.what());
    }
    std::string word;
    for (char c : reply) {
        if (std::isalpha(static_cast<unsigned char>(c))) word += static_cast<char>(std::tolower(c));
        else if (!word.empty()) break;
    }
    if (word == "relevant" || word == "yes") return true;
    if (word == "irrelevant" || word == "no") return false;
    throw ClassifierUnavailable("unrecognized classifier reply: " + reply);
}

// ---- heuristic coder ----

namespace {

enum class TokKind { Number, Op, Equals, Restart };

struct Tok {
    TokKind kind;
    std::int64_t value = 0;
    Operator op = Operator::Add;
};

const std::map<std::string, int>& unit_words() {
    static const std::map<std::string, int> m{
        {"zero", 0},      {"one", 1},        {"two", 2},       {"three", 3},    {"four", 4},
        {"five", 5},      {"six", 6},        {"seven", 7},     {"eight", 8},    {"nine", 9},
        {"ten", 10},      {"eleven", 11},    {"twelve", 12},   {"thirteen", 13}, {"fourteen", 14},
        {"fifteen", 15},  {"sixteen", 16},   {"seventeen", 17}, {"eighteen", 18}, {"nineteen", 19}};
    return m;
}

const std::map<std::string, int>& tens_words() {
    static const std::map<std::string, int> m{{"twenty", 20}, {"thirty", 30}, {"forty", 40}, {"fifty", 50},
                                              {"sixty", 60},  {"seventy", 70}, {"eighty", 80}, {"ninety", 90}};
    return m;
}

std::vector<std::string> words_of(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty()) out.push_back(cur);
        cur.clear();
    };
    for (unsigned char c : text) {
        if (std::isalpha(c)) {
            if (!cur.empty() && std::isdigit(static_cast<unsigned char>(cur.back()))) flush();
            cur += static_cast<char>(std::tolower(c));
        } else if (std::isdigit(c)) {
            if (!cur.empty() && !std::isdigit(static_cast<unsigned char>(cur.back()))) flush();
            cur += static_cast<char>(c);
        } else {
            flush();
            if (c == '+' || c == '*' || c == '/' || c == '=' || c == '-') out.emplace_back(1, c);
            // sentence breaks stop a phrase from running into the next one
            if (c == '.' || c == '?' || c == '!' || c == ';' || c == ',') out.emplace_back(".");
        }
    }
    flush();
    return out;
}

std::vector<std::vector<Tok>> tokenize(const std::string& text) {
    auto w = words_of(text);
    std::vector<std::vector<Tok>> phrases(1);
    auto push = [&](Tok t) { phrases.back().push_back(t); };
    for (std::size_t i = 0; i < w.size(); ++i) {
        const auto& s = w[i];
        auto next = [&](const char* x) { return i + 1 < w.size() && w[i + 1] == x; };
        if (s == ".") {
            phrases.emplace_back();
        } else if (std::isdigit(static_cast<unsigned char>(s[0]))) {
            if (s.size() <= 6) push({TokKind::Number, std::stoll(s)});
        } else if (auto t = tens_words().find(s); t != tens_words().end()) {
            std::int64_t v = t->second;
            // "twenty-four" arrives as "twenty" "-" "four"
            std::size_t j = i + 1;
            if (j < w.size() && w[j] == "-") ++j;
            if (j < w.size()) {
                if (auto u = unit_words().find(w[j]); u != unit_words().end() && u->second > 0 && u->second < 10) {
                    v += u->second;
                    i = j;
                }
            }
            push({TokKind::Number, v});
        } else if (auto u = unit_words().find(s); u != unit_words().end()) {
            push({TokKind::Number, u->second});
        } else if (s == "plus" || s == "add" || s == "+") {
            push({TokKind::Op, 0, Operator::Add});
        } else if (s == "minus" || s == "-") {
            push({TokKind::Op, 0, Operator::Sub});
        } else if (s == "take" && next("away")) {
            push({TokKind::Op, 0, Operator::Sub});
            ++i;
        } else if (s == "times" || s == "x" || s == "*") {
            push({TokKind::Op, 0, Operator::Mul});
        } else if (s == "multiplied" && next("by")) {
            push({TokKind::Op, 0, Operator::Mul});
            ++i;
        } else if (s == "divided" && next("by")) {
            push({TokKind::Op, 0, Operator::Div});
            ++i;
        } else if (s == "over" || s == "/") {
            push({TokKind::Op, 0, Operator::Div});
        } else if (s == "is" || s == "equals" || s == "makes" || s == "gives" || s == "=") {
            push({TokKind::Equals});
        } else if ((s == "start" && next("over")) || s == "restart") {
            push({TokKind::Restart});
            if (s == "start") ++i;
        }
    }
    return phrases;
}

std::uint64_t mix(std::uint64_t seed, const std::string& id) {
    std::seed_seq seq(id.begin(), id.end());
    std::uint32_t out[2];
    seq.generate(out, out + 2);
    std::mt19937_64 rng(seed ^ ((std::uint64_t(out[0]) << 32) | out[1]));
    return rng();
}

}  // namespace

trace::TraceProgram transcript_to_program(const Trial& trial) {
    trace::TraceProgram p;
    trace::Start start;
    for (std::size_t i = 0; i < 4; ++i) start.numbers[i] = trial.problem[i];
    p.statements.push_back(start);
    const GameState root({trial.problem[0], trial.problem[1], trial.problem[2], trial.problem[3]});
    GameState cursor = root;

    for (const auto& toks : tokenize(trial.transcript)) {
        for (std::size_t i = 0; i < toks.size(); ++i) {
            if (toks[i].kind == TokKind::Restart) {
                if (cursor != root) p.statements.push_back(trace::Reset{});
                cursor = root;
                continue;
            }
            if (i + 2 >= toks.size() || toks[i].kind != TokKind::Number || toks[i + 1].kind != TokKind::Op ||
                toks[i + 2].kind != TokKind::Number) {
                continue;
            }
            Rational a(toks[i].value), b(toks[i + 2].value);
            Operator op = toks[i + 1].op;
            if (op == Operator::Div && b == Rational(0)) continue;
            Rational r = apply(a, op, b);
            std::size_t used = 2;
            if (i + 4 < toks.size() && toks[i + 3].kind == TokKind::Equals && toks[i + 4].kind == TokKind::Number) {
                r = Rational(toks[i + 4].value);
                used = 4;
                // a stated fraction, "= 8/3"
                if (i + 6 < toks.size() && toks[i + 5].kind == TokKind::Op && toks[i + 5].op == Operator::Div &&
                    toks[i + 6].kind == TokKind::Number && toks[i + 6].value != 0) {
                    r = Rational(toks[i + 4].value, toks[i + 6].value);
                    used = 6;
                }
            }
            // Only arithmetic on the numbers at hand is coded; the rest is talk.
            if (!cursor.has_operands(a, b)) {
                if (!root.has_operands(a, b)) continue;
                p.statements.push_back(trace::Reset{});
                cursor = root;
            }
            p.statements.push_back(trace::Explore{a, op, b, r});
            cursor = replace_operands(cursor, a, b, r);
            i += used;
        }
    }
    if (trial.response) p.statements.push_back(trace::Answer{*trial.response});
    return p;
}

HeuristicCoder::HeuristicCoder(std::uint64_t seed, double error_rate, std::string name)
    : seed_(seed), error_rate_(error_rate), name_(std::move(name)) {}

std::string HeuristicCoder::code(const validator::CodingRequest& req) {
    if (req.previous) {
        auto parsed = trace::parse(req.previous->source);
        if (auto* prog = std::get_if<trace::TraceProgram>(&parsed)) {
            std::vector<bool> drop(prog->statements.size(), false);
            for (const auto& e : req.previous->report.errors) {
                if (!e.statement_index || *e.statement_index == 0 || *e.statement_index > drop.size()) continue;
                std::size_t k = *e.statement_index - 1;
                auto* ex = std::get_if<trace::Explore>(&prog->statements[k]);
                if (e.kind == ErrorKind::WrongResult && ex) {
                    try {
                        ex->result = apply(ex->a, ex->op, ex->b);
                        continue;
                    } catch (const Error&) {
                    }
                }
                drop[k] = true;
            }
            trace::TraceProgram fixed;
            for (std::size_t k = 0; k < drop.size(); ++k) {
                if (!drop[k]) fixed.statements.push_back(prog->statements[k]);
            }
            return trace::serialize(fixed);
        }
        return trace::serialize(transcript_to_program(req.trial));
    }

    auto program = transcript_to_program(req.trial);
    std::mt19937_64 rng(mix(seed_, req.trial.trial_id));
    double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    if (u < error_rate_) {
        std::vector<std::size_t> explores;
        for (std::size_t k = 0; k < program.statements.size(); ++k) {
            if (std::holds_alternative<trace::Explore>(program.statements[k])) explores.push_back(k);
        }
        if (!explores.empty()) {
            auto& ex = std::get<trace::Explore>(program.statements[explores[rng() % explores.size()]]);
            ex.result = ex.result + Rational(1);
        }
    }
    return trace::serialize(program);
}

}  // namespace tracegraph::pipeline
