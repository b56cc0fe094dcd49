#pragma once

#include <sstream>
#include <stdexcept>
#include <string>

namespace hardwall {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of a function.
struct DomainError : Error {
    using Error::Error;
};

// Parameter set violating EnsembleParams invariants.
struct ValidationError : Error {
    using Error::Error;
};

struct BracketFailure : Error {
    using Error::Error;
};

struct QuadratureFailure : Error {
    using Error::Error;
};

// Two independent evaluations of the same quantity disagree.
struct OracleMismatch : Error {
    OracleMismatch(const std::string& what, double primary, double oracle)
        : Error(format(what, primary, oracle)), primary(primary), oracle(oracle) {}
    double primary;
    double oracle;

private:
    static std::string format(const std::string& what, double p, double o) {
        std::ostringstream os;
        os.precision(17);
        os << what << ": primary=" << p << " oracle=" << o;
        return os.str();
    }
};

struct TuningFailure : Error {
    using Error::Error;
};

struct PrecisionExhausted : Error {
    using Error::Error;
};

}  // namespace hardwall
