#pragma once

#include <optional>
#include <string>

#include "annpick/io.hpp"

namespace annpick {

// One CLI invocation. `degree` is command-specific (cyclicity max degree,
// free polynomial degree for the Fock residual, search window for the
// extremal commands); -1 means "use the command default".
struct CommandRequest {
    std::string command;
    AnnulusContext ctx;

    std::optional<Json> input;
    std::optional<Json> input2;

    std::string kernel = "annulus";
    Complex point{0.0, 0.0};
    Complex point2{0.0, 0.0};
    bool has_point = false;
    bool has_point2 = false;

    int grid = 40;
    int degree = -1;
    int restarts = 20;
    int trunc_M = 40;
};

struct Report {
    Json json;
};

// Dispatch a validated request. Throws ParseError / ValidationError for
// bad requests and lets module OpErrors propagate with their operation
// name attached.
Report run(const CommandRequest& req);

}  // namespace annpick
