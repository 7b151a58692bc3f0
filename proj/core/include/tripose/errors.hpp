#pragma once

#include <stdexcept>
#include <string>

namespace tripose {

// Failure classes; the numeric values double as CLI exit codes.
enum class Errc : int {
    config = 2,
    io = 3,
    no_edge_points = 4,
    no_valid_peak = 5,
    constellations_rejected = 6,
    pose_degenerate = 7,
    no_positive_depth = 8,
    invalid_argument = 9,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message) : std::runtime_error(message), code_(code) {}
    Errc code() const { return code_; }
    int exit_code() const { return static_cast<int>(code_); }

private:
    Errc code_;
};

}  // namespace tripose
