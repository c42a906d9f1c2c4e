#include "tracegraph/trace/execute.hpp"

#include <stdexcept>

#include "tracegraph/core/errors.hpp"

namespace tracegraph::trace {

namespace {

GameState start_state(const Start& s) {
    return GameState({Rational(s.numbers[0]), Rational(s.numbers[1]), Rational(s.numbers[2]), Rational(s.numbers[3])});
}

const Start& find_start(const TraceProgram& program) {
    for (const auto& s : program.statements) {
        if (const auto* start = std::get_if<Start>(&s)) return *start;
        if (!std::holds_alternative<Comment>(s)) break;
    }
    throw std::invalid_argument("program does not begin with a start statement");
}

}  // namespace

Execution execute(const TraceProgram& program, const Rational& goal) {
    const GameState root = start_state(find_start(program));
    Execution out{SearchGraph(root), {}};
    GameState cursor = root;

    for (std::size_t i = 0; i < program.statements.size(); ++i) {
        const Statement& statement = program.statements[i];
        const std::size_t index = i + 1;
        const std::optional<std::size_t> line =
            i < program.lines.size() ? std::optional<std::size_t>(program.lines[i]) : std::nullopt;
        auto report = [&](ErrorKind kind, std::string detail) {
            out.report.errors.push_back(ValidationError{kind, index, line, std::move(detail)});
        };

        if (const auto* e = std::get_if<Explore>(&statement)) {
            const std::string step = e->a.to_string() + " " + symbol(e->op) + " " + e->b.to_string();
            if (!cursor.has_operands(e->a, e->b)) {
                report(ErrorKind::MissingOperand,
                       step + " uses numbers not available in " + cursor.to_string());
            }
            if (e->op == Operator::Div && e->b.is_zero()) {
                report(ErrorKind::DivisionByZero, step + " divides by zero");
            } else {
                try {
                    Rational actual = apply(e->a, e->op, e->b);
                    if (actual != e->result) {
                        report(ErrorKind::WrongResult,
                               step + " is " + actual.to_string() + ", not " + e->result.to_string());
                    }
                } catch (const OverflowError&) {
                    report(ErrorKind::WrongResult, step + " overflows");
                }
            }
            GameState next = replace_operands(cursor, e->a, e->b, e->result);
            out.graph.add_operation(cursor, e->a, e->op, e->b, e->result, next);
            cursor = std::move(next);
        } else if (const auto* g = std::get_if<Goto>(&statement)) {
            if (out.graph.contains(g->state)) {
                cursor = g->state;
            } else {
                report(ErrorKind::MissingNode, "goto " + g->state.to_string() + ": state not in the graph");
            }
        } else if (std::holds_alternative<Reset>(statement)) {
            cursor = root;
        } else if (const auto* s = std::get_if<Subgoal>(&statement)) {
            out.graph.add_subgoal(s->state, goal);
        } else if (const auto* a = std::get_if<Answer>(&statement)) {
            out.graph.set_answer(a->text);
        }
    }
    return out;
}

}  // namespace tracegraph::trace
