#ifndef HECKE_ERRORS_HPP
#define HECKE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hecke {

// Error taxonomy.  The CLI maps these onto process exit codes:
//   param_error     -> 2   (bad arguments / domain violations)
//   numeric_error   -> 3   (pole, regime, bracket, contour failures)
//   resource_error  -> 4   (configured budgets exceeded)
class param_error : public std::invalid_argument {
 public:
  explicit param_error(const std::string& msg) : std::invalid_argument(msg) {}
};

class numeric_error : public std::runtime_error {
 public:
  explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Evaluation requested at (or too close to) a pole of the continued family.
class pole_error : public numeric_error {
 public:
  explicit pole_error(const std::string& msg) : numeric_error(msg) {}
};

// Operation invoked outside its convergence/validity regime.
class regime_error : public numeric_error {
 public:
  explicit regime_error(const std::string& msg) : numeric_error(msg) {}
};

// Root bracketing failed (no sign change / eigenvalue crossing in range).
class bracket_error : public numeric_error {
 public:
  explicit bracket_error(const std::string& msg) : numeric_error(msg) {}
};

// Contour phase-step control failed after maximal refinement.
class contour_error : public numeric_error {
 public:
  explicit contour_error(const std::string& msg) : numeric_error(msg) {}
};

// A word that should be hyperbolic is not.
class classification_error : public numeric_error {
 public:
  explicit classification_error(const std::string& msg) : numeric_error(msg) {}
};

class resource_error : public std::runtime_error {
 public:
  explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace hecke

#endif  // HECKE_ERRORS_HPP
