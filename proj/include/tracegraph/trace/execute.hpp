#pragma once

#include "tracegraph/core/search_graph.hpp"
#include "tracegraph/trace/program.hpp"
#include "tracegraph/validator/report.hpp"

namespace tracegraph::trace {

struct Execution {
    SearchGraph graph;
    ValidationReport report;
};

// Runs a parsed program against a cursor that starts at the root.
//
//   explore  applies at the cursor, records the edge with the stated result
//            and moves the cursor to the resulting state
//   reset    returns the cursor to the root
//   goto     moves the cursor to an existing node
//   subgoal  adds a backward edge {goal} -> state; the cursor stays put
//   answer   records the final answer (last one wins)
//
// Semantic problems are appended to the report; an offending explore still
// adds its edge built from the stated values. Requires a program that passed
// parse() (first non-comment statement is start).
Execution execute(const TraceProgram& program, const Rational& goal = kGoalValue);

}  // namespace tracegraph::trace
