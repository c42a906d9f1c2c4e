#pragma once

#include <stdexcept>
#include <string>

namespace tracegraph {

// Base for every error the library raises. Semantic problems found in coder
// output are reported as data (ValidationReport), not thrown.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class MissingOperand : public Error {
public:
    using Error::Error;
};

class DivisionByZero : public Error {
public:
    using Error::Error;
};

// Checked 64-bit rational arithmetic left the representable range.
class OverflowError : public Error {
public:
    using Error::Error;
};

class RootMismatch : public Error {
public:
    using Error::Error;
};

class DegenerateInput : public Error {
public:
    using Error::Error;
};

class InsufficientData : public Error {
public:
    using Error::Error;
};

class CoderUnavailable : public Error {
public:
    using Error::Error;
};

class ClassifierUnavailable : public Error {
public:
    using Error::Error;
};

class SchemaError : public Error {
public:
    using Error::Error;
};

}  // namespace tracegraph
