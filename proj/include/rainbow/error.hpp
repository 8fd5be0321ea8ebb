#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace rainbow {

// One exception type for the whole library; the kind is what tests and
// callers dispatch on, the message is for humans.
enum class Err {
  loop_edge,
  parallel_edge,
  negative_id,
  out_of_range,
  empty_out_neighborhood,
  unassigned_vertex,
  non_adjacent_assignment,
  lift_failure,
  color_not_hit,
  too_large,
  domain_error,
  hypothesis_violated,
  digon_risk,
  infeasible_degree,
  too_dense,
  precondition,
  internal,
  config_error,
  io_error,
};

class Error : public std::runtime_error {
 public:
  Error(Err kind, std::string msg) : std::runtime_error(std::move(msg)), kind_(kind) {}
  Err kind() const { return kind_; }

 private:
  Err kind_;
};

[[noreturn]] inline void fail(Err kind, const std::string& msg) { throw Error(kind, msg); }

}  // namespace rainbow
