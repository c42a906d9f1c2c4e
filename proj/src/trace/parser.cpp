#include "tracegraph/trace/parser.hpp"

#include <cctype>
#include <optional>
#include <sstream>

namespace tracegraph::trace {

std::string Diagnostic::to_string() const {
    std::ostringstream out;
    out << line << ':' << column << ": " << (kind == DiagnosticKind::Syntax ? "syntax" : "semantic")
        << " error: " << message;
    return out.str();
}

namespace {

enum class TokenKind { Number, Op, Equals, LBrace, RBrace, Comma, End };

struct Token {
    TokenKind kind = TokenKind::End;
    std::size_t column = 0;  // 1-based
    Rational number;
    Operator op = Operator::Add;
};

bool is_space(char c) {
    return c == ' ' || c == '\t';
}

bool is_digit(char c) {
    return std::isdigit(static_cast<unsigned char>(c)) != 0;
}

class LineParser {
public:
    LineParser(std::string_view line, std::size_t line_no, std::vector<Diagnostic>& diagnostics)
        : line_(line), line_no_(line_no), diagnostics_(diagnostics) {}

    // Returns the keyword (possibly empty for comments) and the statement when
    // the line parsed cleanly.
    std::optional<Statement> run(std::string& keyword, std::size_t& keyword_column) {
        skip_space();
        keyword_column = pos_ + 1;
        if (line_[pos_] == '#') {
            keyword.clear();
            return Comment{std::string(line_.substr(pos_ + 1))};
        }
        std::size_t start = pos_;
        while (pos_ < line_.size() && !is_space(line_[pos_])) ++pos_;
        keyword = std::string(line_.substr(start, pos_ - start));

        if (keyword == "answer") {
            std::string_view rest = line_.substr(pos_);
            while (!rest.empty() && is_space(rest.front())) rest.remove_prefix(1);
            while (!rest.empty() && is_space(rest.back())) rest.remove_suffix(1);
            if (rest.empty()) {
                error(keyword_column, "answer needs an expression");
                return std::nullopt;
            }
            return Answer{std::string(rest)};
        }
        if (keyword == "start") return parse_start();
        if (keyword == "explore") return parse_explore();
        if (keyword == "goto") {
            auto state = parse_state();
            if (!state || !expect_end()) return std::nullopt;
            return Goto{*state};
        }
        if (keyword == "subgoal") {
            auto state = parse_state();
            if (!state || !expect_end()) return std::nullopt;
            return Subgoal{*state};
        }
        if (keyword == "reset") {
            if (!expect_end()) return std::nullopt;
            return Reset{};
        }
        error(keyword_column, "unknown statement '" + keyword + "'");
        return std::nullopt;
    }

private:
    void error(std::size_t column, std::string message) {
        diagnostics_.push_back(Diagnostic{line_no_, column, std::move(message), DiagnosticKind::Syntax});
    }

    void skip_space() {
        while (pos_ < line_.size() && is_space(line_[pos_])) ++pos_;
    }

    // Lexes one token; on a lexical error records a diagnostic and returns
    // nullopt.
    std::optional<Token> next() {
        skip_space();
        Token tok;
        tok.column = pos_ + 1;
        if (pos_ >= line_.size()) {
            tok.kind = TokenKind::End;
            return tok;
        }
        char c = line_[pos_];
        bool negative_literal = c == '-' && pos_ + 1 < line_.size() && is_digit(line_[pos_ + 1]) &&
                                !(binary_minus_ && prev_ == TokenKind::Number);
        if (is_digit(c) || negative_literal) {
            std::size_t start = pos_;
            if (c == '-') ++pos_;
            while (pos_ < line_.size() && is_digit(line_[pos_])) ++pos_;
            if (pos_ + 1 < line_.size() && line_[pos_] == '/' && is_digit(line_[pos_ + 1])) {
                ++pos_;
                while (pos_ < line_.size() && is_digit(line_[pos_])) ++pos_;
            }
            std::string_view text = line_.substr(start, pos_ - start);
            auto slash = text.find('/');
            if (slash != std::string_view::npos && text.substr(slash + 1).find_first_not_of('0') == std::string_view::npos) {
                error(tok.column, "zero denominator in '" + std::string(text) + "'");
                return std::nullopt;
            }
            auto value = Rational::parse(text);
            if (!value) {
                error(tok.column, "number out of range: '" + std::string(text) + "'");
                return std::nullopt;
            }
            tok.kind = TokenKind::Number;
            tok.number = *value;
        } else if (auto op = operator_from_symbol(c)) {
            ++pos_;
            tok.kind = TokenKind::Op;
            tok.op = *op;
        } else if (c == '=') {
            ++pos_;
            tok.kind = TokenKind::Equals;
        } else if (c == '{') {
            ++pos_;
            tok.kind = TokenKind::LBrace;
        } else if (c == '}') {
            ++pos_;
            tok.kind = TokenKind::RBrace;
        } else if (c == ',') {
            ++pos_;
            tok.kind = TokenKind::Comma;
        } else {
            error(tok.column, "unexpected character '" + std::string(1, c) + "'");
            return std::nullopt;
        }
        prev_ = tok.kind;
        return tok;
    }

    std::optional<Token> expect(TokenKind kind, const char* what) {
        auto tok = next();
        if (!tok) return std::nullopt;
        if (tok->kind != kind) {
            error(tok->column, std::string("expected ") + what);
            return std::nullopt;
        }
        return tok;
    }

    bool expect_end() {
        return expect(TokenKind::End, "end of line").has_value();
    }

    std::optional<Statement> parse_start() {
        Start start;
        std::size_t count = 0;
        for (;;) {
            auto tok = next();
            if (!tok) return std::nullopt;
            if (tok->kind == TokenKind::End) {
                if (count != 4) {
                    error(tok->column, "start expects 4 numbers, got " + std::to_string(count));
                    return std::nullopt;
                }
                return start;
            }
            if (tok->kind != TokenKind::Number) {
                error(tok->column, "expected a number");
                return std::nullopt;
            }
            if (!tok->number.is_integer()) {
                error(tok->column, "start numbers must be integers");
                return std::nullopt;
            }
            if (count == 4) {
                error(tok->column, "start expects 4 numbers");
                return std::nullopt;
            }
            start.numbers[count++] = tok->number.numerator();
        }
    }

    std::optional<Statement> parse_explore() {
        binary_minus_ = true;
        auto a = expect(TokenKind::Number, "an operand");
        if (!a) return std::nullopt;
        auto op = next();
        if (!op) return std::nullopt;
        if (op->kind != TokenKind::Op) {
            error(op->column, "expected an operator (+, -, *, /)");
            return std::nullopt;
        }
        auto b = expect(TokenKind::Number, "an operand");
        if (!b) return std::nullopt;
        if (!expect(TokenKind::Equals, "'='")) return std::nullopt;
        auto r = expect(TokenKind::Number, "the stated result");
        if (!r) return std::nullopt;
        if (!expect_end()) return std::nullopt;
        return Explore{a->number, op->op, b->number, r->number};
    }

    std::optional<GameState> parse_state() {
        auto open = expect(TokenKind::LBrace, "'{'");
        if (!open) return std::nullopt;
        std::vector<Rational> values;
        for (;;) {
            auto tok = expect(TokenKind::Number, "a number");
            if (!tok) return std::nullopt;
            values.push_back(tok->number);
            auto sep = next();
            if (!sep) return std::nullopt;
            if (sep->kind == TokenKind::RBrace) break;
            if (sep->kind != TokenKind::Comma) {
                error(sep->column, "expected ',' or '}'");
                return std::nullopt;
            }
        }
        return GameState(std::move(values));
    }

    std::string_view line_;
    std::size_t line_no_;
    std::vector<Diagnostic>& diagnostics_;
    std::size_t pos_ = 0;
    TokenKind prev_ = TokenKind::End;
    // In explore, "8 -3" reads as 8 minus 3; elsewhere "-3" is a literal.
    bool binary_minus_ = false;
};

}  // namespace

ParseResult parse(std::string_view source) {
    TraceProgram program;
    std::vector<Diagnostic> diagnostics;
    bool seen_start = false;
    bool reported_missing_start = false;

    std::size_t line_no = 0;
    std::size_t offset = 0;
    while (offset <= source.size()) {
        std::size_t eol = source.find('\n', offset);
        bool last = eol == std::string_view::npos;
        std::string_view line = source.substr(offset, last ? std::string_view::npos : eol - offset);
        offset = last ? source.size() + 1 : eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.find_first_not_of(" \t") == std::string_view::npos) continue;

        std::string keyword;
        std::size_t keyword_column = 1;
        LineParser lp(line, line_no, diagnostics);
        auto statement = lp.run(keyword, keyword_column);

        if (!keyword.empty()) {
            if (keyword == "start") {
                if (seen_start) {
                    diagnostics.push_back(
                        Diagnostic{line_no, keyword_column, "duplicate start statement", DiagnosticKind::Syntax});
                    statement.reset();
                }
                seen_start = true;
            } else if (!seen_start && !reported_missing_start) {
                diagnostics.push_back(Diagnostic{line_no, keyword_column,
                                                 "missing start: the first statement must be 'start N N N N'",
                                                 DiagnosticKind::Syntax});
                reported_missing_start = true;
            }
        }
        if (statement) {
            program.statements.push_back(std::move(*statement));
            program.lines.push_back(line_no);
        }
    }
    if (!seen_start && !reported_missing_start) {
        diagnostics.push_back(
            Diagnostic{1, 1, "missing start: the first statement must be 'start N N N N'", DiagnosticKind::Syntax});
    }
    if (!diagnostics.empty()) return diagnostics;
    return program;
}

std::string serialize(const Statement& statement) {
    struct Visitor {
        std::string operator()(const Start& s) const {
            std::string out = "start";
            for (auto n : s.numbers) out += " " + std::to_string(n);
            return out;
        }
        std::string operator()(const Explore& e) const {
            return "explore " + e.a.to_string() + " " + symbol(e.op) + " " + e.b.to_string() + " = " +
                   e.result.to_string();
        }
        std::string operator()(const Goto& g) const { return "goto " + g.state.to_string(); }
        std::string operator()(const Reset&) const { return "reset"; }
        std::string operator()(const Subgoal& s) const { return "subgoal " + s.state.to_string(); }
        std::string operator()(const Answer& a) const { return "answer " + a.text; }
        std::string operator()(const Comment& c) const { return "#" + c.text; }
    };
    return std::visit(Visitor{}, statement);
}

std::string serialize(const TraceProgram& program) {
    std::string out;
    for (const auto& s : program.statements) {
        out += serialize(s);
        out += '\n';
    }
    return out;
}

}  // namespace tracegraph::trace
