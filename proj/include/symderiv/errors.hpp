#pragma once

#include <stdexcept>
#include <string>

namespace symderiv {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotDoubleFloor : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct InternalInconsistency : Error { using Error::Error; };
struct DegreeParity : Error { using Error::Error; };
struct NotLie : Error { using Error::Error; };
struct NotInvariant : Error { using Error::Error; };
struct UnstableGenus : Error { using Error::Error; };
struct GenusMismatch : Error { using Error::Error; };
struct IndexError : Error { using Error::Error; };
struct SizePolicy : Error { using Error::Error; };

}  // namespace symderiv
