#pragma once

#include <stdexcept>
#include <string>

namespace algdyn {

  enum class ErrorKind {
    invalid_input,
    order_exceeds_budget,
    closure_violation,
    malformed_matrix,
    not_invertible_on_image,
    not_a_subcone,
    not_increasing,
    not_extremal,
    dimension_mismatch,
    ill_defined_at_point,
    not_homogeneous,
    non_prime_field,
    not_surjective,
    not_injective,
    base_too_small,
    point_not_on_curve,
    singular_curve,
    fibers_not_disjoint,
    empty_fiber,
    invariant_violation
  };

  inline char const* kind_name(ErrorKind k) noexcept {
    switch (k) {
      case ErrorKind::invalid_input: return "InvalidInput";
      case ErrorKind::order_exceeds_budget: return "OrderExceedsBudget";
      case ErrorKind::closure_violation: return "ClosureViolation";
      case ErrorKind::malformed_matrix: return "MalformedMatrix";
      case ErrorKind::not_invertible_on_image: return "NotInvertibleOnImage";
      case ErrorKind::not_a_subcone: return "NotASubcone";
      case ErrorKind::not_increasing: return "NotIncreasing";
      case ErrorKind::not_extremal: return "NotExtremal";
      case ErrorKind::dimension_mismatch: return "DimensionMismatch";
      case ErrorKind::ill_defined_at_point: return "IllDefinedAtPoint";
      case ErrorKind::not_homogeneous: return "NotHomogeneous";
      case ErrorKind::non_prime_field: return "NonPrimeField";
      case ErrorKind::not_surjective: return "NotSurjective";
      case ErrorKind::not_injective: return "NotInjective";
      case ErrorKind::base_too_small: return "BaseTooSmall";
      case ErrorKind::point_not_on_curve: return "PointNotOnCurve";
      case ErrorKind::singular_curve: return "SingularCurve";
      case ErrorKind::fibers_not_disjoint: return "FibersNotDisjoint";
      case ErrorKind::empty_fiber: return "EmptyFiber";
      case ErrorKind::invariant_violation: return "InvariantViolation";
    }
    return "Unknown";
  }

  // Every failure raised by the library. `index()` carries the offending
  // position for errors that have one (chain element, fiber, table entry).
  class Error : public std::runtime_error {
   public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    Error(ErrorKind kind, std::string const& what, std::size_t index = npos)
        : std::runtime_error(what), _kind(kind), _index(index) {}

    ErrorKind kind() const noexcept {
      return _kind;
    }

    std::size_t index() const noexcept {
      return _index;
    }

    char const* name() const noexcept {
      return kind_name(_kind);
    }

   private:
    ErrorKind   _kind;
    std::size_t _index;
  };

}  // namespace algdyn
