#pragma once

// The `bispinor` command-line tool, callable in-process.
//
// Exit codes: 0 success, 1 input error, 2 infeasible input, 3 batch partial failure.

#include "bispinor/io.hpp"
#include "bispinor/random.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace bispinor::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int input_error = 1;
inline constexpr int infeasible = 2;
inline constexpr int partial_failure = 3;
}  // namespace exit_code

enum class Command { check, solve, spectrum, roundtrip, gen, transform };
enum class OutputFormat { json, table };

struct JobConfig {
    Command command = Command::check;
    std::string input_path = "-";
    RepKind rep = RepKind::majorana_real;
    std::optional<std::uint64_t> seed;  // gauge seed for solve, corpus seed for gen, sampler seed for transform
    OutputFormat format = OutputFormat::json;
    Tolerances tol;

    // gen
    long long count = 0;
    bool feasible_only = false;
    double margin_min = 0.0;
    long long max_attempts = 1000000;
    Sector sector = Sector::real;

    // transform
    std::optional<Vec3> boost;     // rapidity vector
    std::optional<Vec3> rotation;  // axis * angle
    std::optional<RMat4> matrix;   // explicit w, row-major
    bool random_lorentz = false;
    double rapidity_bound = 1.0;
};

/// Applies a JSON config object. Unknown keys raise InputError.
void apply_config(JobConfig& cfg, const io::json& config);

/// Sets one tolerance from "name=value". Throws InputError.
void apply_tolerance_override(Tolerances& tol, const std::string& assignment);

/// Lorentz transformation requested by the transform options (boost * rotation,
/// then explicit matrix, then sampled transform applied last).
LorentzTransform requested_transform(const JobConfig& cfg);

/// Runs one command; args excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace bispinor::cli
