#pragma once

#include <stdexcept>
#include <string>

namespace hqx {

// Invalid mathematical input: non-squarefree D, inert prime, non-unit where a
// unit is required, and so on.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computation needed more p-adic digits than were available.
class PrecisionError : public DomainError {
 public:
  PrecisionError(const std::string& what, long needed_precision)
      : DomainError(what), needed_precision_(needed_precision) {}
  long needed_precision() const noexcept { return needed_precision_; }

 private:
  long needed_precision_;
};

// A truncated expansion ran out of trace/index range.
class BoundError : public DomainError {
 public:
  BoundError(const std::string& what, long required_bound)
      : DomainError(what), required_bound_(required_bound) {}
  long required_bound() const noexcept { return required_bound_; }

 private:
  long required_bound_;
};

// A cross-check between two independent computations disagreed.
class InternalCheckError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace hqx
