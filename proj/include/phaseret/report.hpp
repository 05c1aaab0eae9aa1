#pragma once

#include <functional>
#include <string>
#include <vector>

#include "phaseret/config.hpp"
#include "phaseret/io.hpp"
#include "phaseret/search.hpp"

namespace phaseret {

struct AnalysisOptions {
  NumericConfig cfg;
  SearchBudget budget;
  ArithmeticMode mode = ArithmeticMode::Auto;
};

/// Runs every applicable decider on the input and collects the verdicts.
/// A false verdict always carries a witness or the name of the failed
/// condition; an inconclusive search carries its budget statistics.
json analyze(const Input& in, const AnalysisOptions& opts);

/// Short human-readable rendering of an analysis report.
std::string render_text(const json& report);

/// Witness for the named property: "wpr", "phase", "norm" or "proj-phase".
/// Throws PreconditionError when the property does not apply to the input.
json witness_command(const Input& in, const std::string& property, const AnalysisOptions& opts);

/// Budgeted search for counterexamples on the input.
json falsify_command(const Input& in, const AnalysisOptions& opts);

json weak_witness_json(const WeakWitness& w);
json partition_witness_json(const PartitionWitness& w);
json span_witness_json(const SpanWitness& w);

/// One reproducible check from the example registry.
struct ExampleCase {
  std::string id;
  std::string description;
  std::function<json(const NumericConfig&)> run;  // result has a boolean "pass"
};

const std::vector<ExampleCase>& example_registry();

/// Runs all examples, or only `id` when it is non-empty. Throws
/// PreconditionError for an unknown id.
json run_examples(const std::string& id, const NumericConfig& cfg);

}  // namespace phaseret
