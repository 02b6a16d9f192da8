#pragma once

#include <stdexcept>
#include <string>

namespace ricci {

/// Base class for every error thrown by this library. Messages name the
/// offending element (vertex id, edge id, value) so callers can report them.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input text could not be parsed as a graph.
struct ParseError : Error {
    using Error::Error;
};

struct DisconnectedGraph : Error {
    using Error::Error;
};

struct NonpositiveLength : Error {
    using Error::Error;
};

struct DanglingEndpoint : Error {
    using Error::Error;
};

struct DuplicateId : Error {
    using Error::Error;
};

struct UnknownVertex : Error {
    using Error::Error;
};

struct UnknownEdge : Error {
    using Error::Error;
};

struct LoopSubdivision : Error {
    using Error::Error;
};

struct SplitOutOfRange : Error {
    using Error::Error;
};

/// Spanning-tree enumeration refused: too many non-loop edges.
struct InstanceTooLarge : Error {
    using Error::Error;
};

struct SameVertex : Error {
    using Error::Error;
};

/// A linear solve or an integration step failed in a way that valid inputs
/// should never trigger.
struct NumericalFailure : Error {
    using Error::Error;
};

struct InvalidConfig : Error {
    using Error::Error;
};

struct StepTooLarge : Error {
    using Error::Error;
};

}  // namespace ricci
