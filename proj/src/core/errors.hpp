#ifndef HS_CORE_ERRORS_HPP
#define HS_CORE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hs {

// Error categories; each maps to a distinct C-API status / CLI exit code.
enum class errc {
  invalid_param = 1,
  incompatible_grid = 2,
  config = 3,
  io = 4,
  numeric = 5,
  diverged = 6,
  unknown_command = 7,
  internal = 8,
};

class Error : public std::runtime_error {
public:
  Error(errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) { throw Error(code, msg); }

} // namespace hs

#endif
