#ifndef COFIB_ERROR_HPP
#define COFIB_ERROR_HPP

#include <stdexcept>
#include <string>

namespace cofib {

// Domain error with a stable machine-readable name, e.g. "RingMismatch".
// The CLI maps these to exit code 2; malformed input maps to exit 1.
class DomainError : public std::runtime_error {
  public:
    DomainError(std::string name, const std::string& detail)
        : std::runtime_error(name + ": " + detail), name_(std::move(name)) {}

    const std::string& name() const { return name_; }

  private:
    std::string name_;
};

[[noreturn]] inline void fail(const std::string& name, const std::string& detail)
{
    throw DomainError(name, detail);
}

} // namespace cofib

#endif
