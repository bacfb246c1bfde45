// errors.hpp: exception types raised by the simulation engine

#pragma once

#include <stdexcept>
#include <string>

namespace vrsim {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidDimension : Error { using Error::Error; };
struct InvalidLabel : Error { using Error::Error; };
struct ContractViolation : Error { using Error::Error; };
struct BracketError : Error { using Error::Error; };
struct DegeneracyError : Error { using Error::Error; };
struct StiffnessError : Error { using Error::Error; };
struct NumericalHealthError : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

} // namespace vrsim
