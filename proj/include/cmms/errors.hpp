#ifndef CMMS_ERRORS_HPP
#define CMMS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cmms {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input: unknown vertex ids, unparsable values, bad parameters.
class InvalidInput : public Error {
public:
    using Error::Error;
};

// Input violates a structural precondition (e.g. disconnected where a
// connected graph is required).
class StructuralError : public Error {
public:
    using Error::Error;
};

class SizeLimitError : public Error {
public:
    using Error::Error;
};

// More components than bundles: no (G,n)-partition exists.
class UndefinedMms : public Error {
public:
    using Error::Error;
};

class ClassMismatch : public Error {
public:
    using Error::Error;
};

class UnsupportedBlock : public Error {
public:
    using Error::Error;
};

// A guarantee that the constructions prove can never fail did fail.
// Always a bug, never a legal outcome.
class InternalGuaranteeViolation : public Error {
public:
    using Error::Error;
};

} // namespace cmms

#endif // CMMS_ERRORS_HPP
