#pragma once

#include <stdexcept>
#include <string>

namespace arrayrepair {

// Base for every failure raised by the library. The C API maps each subclass
// onto one arp_status value.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class FieldError : public Error {
public:
    using Error::Error;
};

class DivisionByZeroError : public Error {
public:
    using Error::Error;
};

class SingularMatrixError : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class CodeError : public Error {
public:
    using Error::Error;
};

class GenerationError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class InvalidRepairError : public Error {
public:
    using Error::Error;
};

} // namespace arrayrepair
