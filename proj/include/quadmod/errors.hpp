#pragma once

#include <stdexcept>
#include <string>

namespace quadmod {

// Precondition / input violations.  The CLI maps these to exit code 2.
class invalid_input : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical procedure failed to produce a trustworthy result.
// The CLI maps these to exit code 3.
class solver_failure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Quadrature or series did not reach the requested tolerance.
class convergence_error : public solver_failure {
 public:
  using solver_failure::solver_failure;
};

// Root-finder bracket does not contain the target.
class bracket_error : public solver_failure {
 public:
  using solver_failure::solver_failure;
};

// No cubic root satisfies the pole-selection predicate.
class no_root_error : public solver_failure {
 public:
  using solver_failure::solver_failure;
};

// More than one cubic root satisfies the predicate with a solid margin.
class ambiguous_root_error : public solver_failure {
 public:
  using solver_failure::solver_failure;
};

// Boundary-correspondence inversion failed to bracket its target.
class inversion_error : public solver_failure {
 public:
  using solver_failure::solver_failure;
};

// The two expressions for the vertex A4 disagree.
class closure_error : public solver_failure {
 public:
  using solver_failure::solver_failure;
};

// Hypergeometric argument on the singular hyperplane z = 1.
class singular_argument_error : public invalid_input {
 public:
  using invalid_input::invalid_input;
};

// rho(x) evaluated at the zero of its denominator.
class pole_error : public invalid_input {
 public:
  using invalid_input::invalid_input;
};

}  // namespace quadmod
