#pragma once

namespace hardwall {

// Serial paths are the references; parallel paths use OpenMP over independent points
// (or replicas) and must reproduce them exactly.
enum class Exec { Serial, Parallel };

const char* to_string(Exec exec);

}  // namespace hardwall
