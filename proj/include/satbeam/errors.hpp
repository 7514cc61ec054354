#pragma once

#include <stdexcept>
#include <string>

namespace satbeam {

/// Base class for all recoverable simulation errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define SATBEAM_DEFINE_ERROR(name)                  \
    class name : public Error {                     \
    public:                                         \
        using Error::Error;                         \
    }

SATBEAM_DEFINE_ERROR(ConfigError);         // invalid configuration value or file
SATBEAM_DEFINE_ERROR(DegenerateLayout);    // coincident satellites in a generated layout
SATBEAM_DEFINE_ERROR(RejectionStall);      // truncation bound unreachable by sampling
SATBEAM_DEFINE_ERROR(WindowMiss);          // steering direction outside a pattern map
SATBEAM_DEFINE_ERROR(ResolutionTooCoarse); // -3 dB region unresolved or spills the window
SATBEAM_DEFINE_ERROR(EmptyRegion);         // sidelobe search region fully masked
SATBEAM_DEFINE_ERROR(EmptyCurve);          // requirement curve without samples
SATBEAM_DEFINE_ERROR(GridMismatch);        // maps with different grid metadata
SATBEAM_DEFINE_ERROR(DimensionMismatch);   // inconsistent vector lengths

#undef SATBEAM_DEFINE_ERROR

}  // namespace satbeam
