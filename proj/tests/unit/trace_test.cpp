#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "generators.hpp"
#include "tracegraph/trace/execute.hpp"
#include "tracegraph/trace/parser.hpp"

using namespace tracegraph;
using namespace tracegraph::trace;

namespace {

TraceProgram parse_ok(std::string_view src) {
    auto r = parse(src);
    if (auto* d = std::get_if<std::vector<Diagnostic>>(&r)) {
        FAIL("unexpected diagnostics: " << d->front().to_string());
    }
    return std::get<TraceProgram>(r);
}

std::vector<Diagnostic> parse_err(std::string_view src) {
    auto r = parse(src);
    REQUIRE(std::holds_alternative<std::vector<Diagnostic>>(r));
    return std::get<std::vector<Diagnostic>>(r);
}

}  // namespace

TEST_CASE("parse a start and one explore") {
    auto p = parse_ok("start 3 3 8 8\nexplore 8 * 3 = 24");
    REQUIRE(p.statements.size() == 2);
    CHECK(std::get<Start>(p.statements[0]).numbers == std::array<std::int64_t, 4>{3, 3, 8, 8});
    CHECK(std::get<Explore>(p.statements[1]) == Explore{8, Operator::Mul, 3, 24});
    CHECK(p.lines == std::vector<std::size_t>{1, 2});
}

TEST_CASE("missing start is a diagnostic on line 1") {
    auto d = parse_err("explore 8 * 3 = 24");
    REQUIRE(d.size() == 1);
    CHECK(d[0].line == 1);
    CHECK(d[0].message.find("missing start") != std::string::npos);
    CHECK(parse_err("")[0].message.find("missing start") != std::string::npos);
    CHECK(parse_err("# only a comment\n")[0].line == 1);
}

TEST_CASE("unknown operator is reported at its column") {
    auto d = parse_err("start 3 3 8 8\nexplore 8 & 3 = 24");
    REQUIRE(d.size() == 1);
    CHECK(d[0].line == 2);
    CHECK(d[0].column == 11);
    CHECK(d[0].kind == DiagnosticKind::Syntax);
}

TEST_CASE("syntax error fixtures carry positions") {
    struct Case {
        const char* source;
        std::size_t line;
        std::size_t column;
    };
    const Case cases[] = {
        {"start 3 3 8", 1, 12},
        {"start 3 3 8 8 8", 1, 15},
        {"start 3 3 8 8/3", 1, 13},
        {"start 3 3 8 8\nexplore 8 * 3 24", 2, 15},
        {"start 3 3 8 8\nexplore 8 * = 24", 2, 13},
        {"start 3 3 8 8\nexplore 8 * 3 = 24 extra", 2, 20},
        {"start 3 3 8 8\nexplore 8/0 * 3 = 24", 2, 9},
        {"start 3 3 8 8\ngoto 4,6", 2, 6},
        {"start 3 3 8 8\ngoto {4 6}", 2, 9},
        {"start 3 3 8 8\ngoto {}", 2, 7},
        {"start 3 3 8 8\nsubgoal {4,6", 2, 13},
        {"start 3 3 8 8\nreset now", 2, 7},
        {"start 3 3 8 8\nanswer", 2, 1},
        {"start 3 3 8 8\nfly 3", 2, 1},
        {"start 3 3 8 8\nstart 1 2 3 4", 2, 1},
        {"start 3 3 8 8\n  explore 99999999999999999999 + 1 = 2", 2, 11},
        {"start 3 3 8 8\nexplore 8 × 3 = 24", 2, 11},
    };
    for (const auto& c : cases) {
        CAPTURE(c.source);
        auto d = parse_err(c.source);
        REQUIRE_FALSE(d.empty());
        CHECK(d[0].line == c.line);
        CHECK(d[0].column == c.column);
        CHECK_FALSE(d[0].message.empty());
    }
}

TEST_CASE("lexing of signs and fractions") {
    auto p = parse_ok("start 3 3 8 8\nexplore 3 - 8 = -5\nexplore -5 + 8 = 3\nexplore 8 / 3 = 8/3\nexplore 8 -3 = 5");
    CHECK(std::get<Explore>(p.statements[1]) == Explore{3, Operator::Sub, 8, -5});
    CHECK(std::get<Explore>(p.statements[2]) == Explore{-5, Operator::Add, 8, 3});
    CHECK(std::get<Explore>(p.statements[3]) == Explore{8, Operator::Div, 3, Rational(8, 3)});
    CHECK(std::get<Explore>(p.statements[4]) == Explore{8, Operator::Sub, 3, 5});
    auto q = parse_ok("  start 1 2 3 4\r\n\n\tgoto { 4 , 6 }\r\n");
    CHECK(std::get<Goto>(q.statements[1]).state == GameState{4, 6});
}

TEST_CASE("serialize") {
    TraceProgram p;
    p.statements.push_back(Start{{1, 2, 3, 4}});
    CHECK(serialize(p) == "start 1 2 3 4\n");
    CHECK(serialize(Statement{Explore{8, Operator::Div, 3, Rational(8, 3)}}) == "explore 8 / 3 = 8/3");
    CHECK(serialize(Statement{Subgoal{GameState{6, 4}}}) == "subgoal {4,6}");
    CHECK(serialize(Statement{Comment{" line 3"}}) == "# line 3");
}

TEST_CASE("round trip: parse(serialize(p)) == p for generated programs") {
    testing::Gen gen(20240101);
    for (int i = 0; i < 2000; ++i) {
        auto p = gen.program();
        std::string text = serialize(p);
        auto r = parse(text);
        if (auto* d = std::get_if<std::vector<Diagnostic>>(&r)) FAIL(d->front().to_string() << "\n" << text);
        CHECK(std::get<TraceProgram>(r) == p);
        CHECK(serialize(std::get<TraceProgram>(r)) == text);
    }
}

TEST_CASE("execute the 8/(3-8/3) chain") {
    auto p = parse_ok("start 3 3 8 8\nexplore 8 / 3 = 8/3\nexplore 8 - 8/3 = 16/3");
    auto run = execute(p);
    CHECK(run.report.clean());
    CHECK(run.graph.node_count() == 3);
    CHECK(run.graph.op_edges().size() == 2);
    CHECK(run.graph.op_edges()[1].to == GameState{3, Rational(16, 3)});
}

TEST_CASE("execute records wrong results but keeps the stated edge") {
    auto run = execute(parse_ok("start 3 3 8 8\nexplore 8 * 3 = 25"));
    REQUIRE(run.report.errors.size() == 1);
    CHECK(run.report.errors[0].kind == ErrorKind::WrongResult);
    CHECK(run.report.errors[0].statement_index == 2u);
    CHECK(run.graph.op_edges()[0].to == GameState{3, 8, 25});
}

TEST_CASE("goto to an unknown state is MissingNode") {
    auto run = execute(parse_ok("start 3 3 8 8\ngoto {4,6}"));
    REQUIRE(run.report.errors.size() == 1);
    CHECK(run.report.errors[0].kind == ErrorKind::MissingNode);
    CHECK(run.report.errors[0].statement_index == 2u);
}

TEST_CASE("cursor semantics") {
    auto run = execute(parse_ok("start 3 3 8 8\n"
                                "explore 3 + 3 = 6\n"
                                "reset\n"
                                "explore 8 / 3 = 8/3\n"
                                "# jump back\n"
                                "goto {6,8,8}\n"
                                "subgoal {4,6}\n"
                                "explore 8 - 6 = 2\n"
                                "answer 8/(3-8/3)"));
    CHECK(run.report.clean());
    const auto& ops = run.graph.op_edges();
    REQUIRE(ops.size() == 3);
    CHECK(ops[1].from == GameState{3, 3, 8, 8});
    CHECK(ops[2].from == GameState{6, 8, 8});
    CHECK(run.graph.subgoal_edges()[0].order == 2);
    CHECK(ops[2].order == 3);
    CHECK(run.graph.answer() == "8/(3-8/3)");
}

TEST_CASE("missing operands and division by zero") {
    auto run = execute(parse_ok("start 3 3 8 8\nexplore 9 - 3 = 6\nexplore 3 + 3 = 6\nexplore 6 - 6 = 0\n"
                                "explore 8 / 0 = 0"));
    CHECK(run.report.count(ErrorKind::MissingOperand) == 2);
    CHECK(run.report.count(ErrorKind::DivisionByZero) == 1);
    CHECK(run.report.errors[0].statement_index == 2u);
    CHECK(run.report.errors[0].line == 2u);
    CHECK(run.graph.op_edges().size() == 4);
}

TEST_CASE("execution is deterministic and edge order follows statements") {
    testing::Gen gen(99);
    for (int i = 0; i < 300; ++i) {
        auto p = gen.program();
        auto a = execute(p);
        auto b = execute(p);
        CHECK(a.graph == b.graph);
        CHECK(a.report == b.report);
        std::vector<std::size_t> mutating;
        for (std::size_t k = 0; k < p.statements.size(); ++k) {
            if (std::holds_alternative<Explore>(p.statements[k]) || std::holds_alternative<Subgoal>(p.statements[k])) {
                mutating.push_back(k);
            }
        }
        auto ordered = a.graph.edges_in_order();
        REQUIRE(ordered.size() == mutating.size());
        for (std::size_t k = 0; k < ordered.size(); ++k) {
            CHECK(edge_order(ordered[k]) == k);
            CHECK(std::holds_alternative<Subgoal>(p.statements[mutating[k]]) ==
                  std::holds_alternative<const SubgoalEdge*>(ordered[k]));
        }
    }
}
