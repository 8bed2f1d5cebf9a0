#pragma once

#include <stdexcept>
#include <string>

namespace hyperlevy {

// Base class; kind() is the stable name reported by the CLI.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define HYPERLEVY_ERROR(Name)                                              \
    class Name : public Error {                                            \
    public:                                                                \
        explicit Name(const std::string& what) : Error(#Name, what) {}     \
    };

HYPERLEVY_ERROR(PoleError)
HYPERLEVY_ERROR(NonConvergence)
HYPERLEVY_ERROR(NonFinite)
HYPERLEVY_ERROR(DomainError)
HYPERLEVY_ERROR(InadmissibleParameters)
HYPERLEVY_ERROR(UnsupportedCase)
HYPERLEVY_ERROR(NotSpecial)
HYPERLEVY_ERROR(NegativeShift)
HYPERLEVY_ERROR(UnboundedVariation)
HYPERLEVY_ERROR(OutOfStrip)
HYPERLEVY_ERROR(ContourOutOfStrip)
HYPERLEVY_ERROR(TruncationTooLow)
HYPERLEVY_ERROR(NotInCkl)
HYPERLEVY_ERROR(HorizonTooShort)

#undef HYPERLEVY_ERROR

} // namespace hyperlevy
