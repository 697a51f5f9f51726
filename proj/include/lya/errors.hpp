#pragma once

#include <stdexcept>
#include <string>

namespace lya {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IndexOutOfRange : Error {
    using Error::Error;
};
struct AlternationViolation : Error {
    using Error::Error;
};
struct DimensionMismatch : Error {
    using Error::Error;
};
struct InvalidAlgebra : Error {
    using Error::Error;
};
struct InvalidRepresentation : Error {
    using Error::Error;
};
struct ShapeError : Error {
    using Error::Error;
};
struct LevelError : Error {
    using Error::Error;
};
struct EquationsViolated : Error {
    using Error::Error;
};
struct NotEquivalent : Error {
    using Error::Error;
};
struct InternalError : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};

}  // namespace lya
