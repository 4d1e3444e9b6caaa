#pragma once

#include <stdexcept>
#include <string>

namespace adhm {

// Every library failure derives from Error so callers can catch broadly.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define ADHM_DEFINE_ERROR(Name)                   \
    class Name : public Error {                   \
    public:                                       \
        explicit Name(const std::string& what)    \
            : Error(#Name ": " + what) {}         \
    }

ADHM_DEFINE_ERROR(ShapeMismatch);
ADHM_DEFINE_ERROR(ParseError);
ADHM_DEFINE_ERROR(DivisionByZero);
ADHM_DEFINE_ERROR(NotSplitOverQi);
ADHM_DEFINE_ERROR(ChargeTooLarge);
ADHM_DEFINE_ERROR(SingularGroupElement);
ADHM_DEFINE_ERROR(NotIntegrable);
ADHM_DEFINE_ERROR(EigenvalueCollision);
ADHM_DEFINE_ERROR(NotInNL);
ADHM_DEFINE_ERROR(InconsistentPair);
ADHM_DEFINE_ERROR(InvalidArgument);
ADHM_DEFINE_ERROR(DegreeMismatch);
ADHM_DEFINE_ERROR(NonCollapsing);

#undef ADHM_DEFINE_ERROR

}  // namespace adhm
