#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace causal_econ {

enum class ErrorCode {
  duplicate_variable_id,
  duplicate_symbol,
  empty_variable_id,
  dangling_edge_endpoint,
  self_loop,
  duplicate_edge,
  not_a_cycle,
  unknown_variable,
  shocked_variable_frozen,
  path_budget_exceeded,
  mpc_out_of_range,
  invalid_parameter,
  skeleton_mismatch,
  link_not_in_skeleton,
  duplicate_answer,
  empty_input,
  no_common_students,
  parse_error,
  not_found,
  conflict,
  io_error,
};

/// Stable machine-readable name, used in HTTP error bodies and CLI output.
std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace causal_econ
