#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "cpilink/monthly.hpp"

namespace cpilink {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// --- ingestion ---
struct ParseError : Error {
    using Error::Error;
};
struct GapError : Error {
    MonthlyIndex first_missing;
    GapError(const std::string& what, MonthlyIndex missing) : Error(what), first_missing(missing) {}
};
struct OrderError : Error {
    using Error::Error;
};
struct DuplicateAcronym : Error {
    using Error::Error;
};
struct SchemaError : Error {
    using Error::Error;
};
struct IoError : Error {
    using Error::Error;
};

// --- series / regression ---
struct EmptyIntersection : Error {
    using Error::Error;
};
struct WindowUnavailable : Error {
    std::optional<Window> feasible;  // maximal feasible window, if any
    WindowUnavailable(const std::string& what, std::optional<Window> f) : Error(what), feasible(f) {}
};
struct RankDeficient : Error {
    using Error::Error;
};
struct NoFeasibleCandidate : Error {
    using Error::Error;
};

// --- econometrics ---
struct SeriesTooShort : Error {
    using Error::Error;
};
struct SingularMoment : Error {
    using Error::Error;
};
struct DegenerateSeries : Error {
    using Error::Error;
};

// --- bankruptcy ---
struct NotDistressed : Error {
    using Error::Error;
};

}  // namespace cpilink
