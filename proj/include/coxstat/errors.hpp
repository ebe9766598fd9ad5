#pragma once

#include <stdexcept>
#include <string>

namespace coxstat {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParameterOutOfRange : Error { using Error::Error; };
struct GroupMismatch : Error { using Error::Error; };
struct OrderExceedsCap : Error { using Error::Error; };
struct TableMissing : Error { using Error::Error; };
struct ZeroVariance : Error { using Error::Error; };
struct ConstraintViolated : Error { using Error::Error; };
struct PreconditionViolated : Error { using Error::Error; };
struct ModulusExceedsOne : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

} // namespace coxstat
