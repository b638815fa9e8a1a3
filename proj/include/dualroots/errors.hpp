#ifndef DUALROOTS_ERRORS_HPP
#define DUALROOTS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dualroots {

/// A computed object contradicts a statement the library checks (never patched over).
class TheoremViolation : public std::runtime_error {
public:
    TheoremViolation(std::string theorem, const std::string& what, std::string witness = {})
        : std::runtime_error(theorem + ": " + what), theorem_(std::move(theorem)), witness_(std::move(witness))
    {
    }

    const std::string& theorem() const { return theorem_; }
    const std::string& witness() const { return witness_; }

private:
    std::string theorem_;
    std::string witness_;
};

} // namespace dualroots

#endif // DUALROOTS_ERRORS_HPP
