#ifndef ROBINFLOW_ERRORS_HPP
#define ROBINFLOW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace robinflow {

enum class errc {
  validation,    // bad arguments / malformed config
  domain,        // E_DOMAIN
  pole,          // E_POLE
  order,         // E_ORDER
  diagonal,      // E_DIAGONAL
  contour,       // E_CONTOUR
  landau,        // E_LANDAU
  range,         // E_RANGE
  stiff,         // E_STIFF
  dirichlet,     // E_DIRICHLET
  not_eigen,     // E_NOT_EIGEN
  window,        // E_WINDOW
  endpoint,      // E_ENDPOINT
  unresolved,    // E_UNRESOLVED
  singular,      // E_SINGULAR
  not_on_branch, // E_NOT_ON_BRANCH
  not_monotone,  // E_NOT_MONOTONE
};

class error : public std::runtime_error {
public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

} // namespace robinflow

#endif
