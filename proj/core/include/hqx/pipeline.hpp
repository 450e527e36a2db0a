#pragma once

#include <string>
#include <variant>
#include <vector>

#include "hqx/serialize.hpp"

namespace hqx {

using Expansion = std::variant<HilbertQExp, ModularQExp>;

struct PipelineOp {
  std::string name;
  bool has_arg = false;
  long arg = 0;
};

/// Field, prime, source and operator chain of one `apply` run.
///
/// JSON shape:
///   {"field": {"D": 5}, "prime": {"p": 11, "prec": 3},
///    "source": {"expansion": {...}} | {"eigenform": {...}} | {"family": {...}, "s": 0},
///    "ops": ["deplete_pi", "theta_prime_inverse:1", "restrict"],
///    "outputs": {"expansion": "out.json", "log": "log.json"}}
/// An op is "name" or "name:arg", or {"op": name, "arg": n}.
struct PipelineSpec {
  long D = 5;
  long p = 11;
  long prec = 3;
  Json source;
  std::vector<PipelineOp> ops;
  std::string output_path;
  std::string log_path;
};

PipelineSpec parse_pipeline(const Json& j);
PipelineOp parse_op(const Json& j);
// Names and argument types checked against the registry, with the running
// Hilbert/modular type threaded through the chain.
void typecheck_pipeline(const PipelineSpec& spec);
std::vector<std::string> registered_ops();

struct ProvenanceEntry {
  std::size_t index = 0;
  std::string op;
  long input_bound = 0;
  long output_bound = 0;
  std::string precision;  // least absolute precision among the coefficients
};

struct PipelineResult {
  Expansion value;
  std::vector<ProvenanceEntry> log;
};

// A BoundError raised by op number `op_index` (0-based).
class PipelineBoundError : public BoundError {
 public:
  PipelineBoundError(const BoundError& inner, std::size_t op_index, std::string op)
      : BoundError("op " + std::to_string(op_index) + " (" + op + "): " + inner.what(), inner.required_bound()),
        op_index_(op_index),
        op_(std::move(op)) {}
  std::size_t op_index() const noexcept { return op_index_; }
  const std::string& op() const noexcept { return op_; }

 private:
  std::size_t op_index_;
  std::string op_;
};

Expansion build_source(const PipelineSpec& spec);
Expansion apply_op(const Expansion& x, const PipelineOp& op);
PipelineResult run_pipeline(const PipelineSpec& spec);
PipelineResult run_ops(Expansion start, const std::vector<PipelineOp>& ops);

Json to_json(const Expansion& x);
Json to_json(const ProvenanceEntry& e);
std::string min_precision_string(const Expansion& x);

// Reads a whole JSON document from a file; DomainError if unreadable.
Json read_json_file(const std::string& path);

}  // namespace hqx
