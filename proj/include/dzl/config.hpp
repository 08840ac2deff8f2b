#pragma once

// Experiment configuration files.
//
// Grammar (one statement per line):
//
//   line     := blank | comment | assign
//   comment  := '#' ...
//   assign   := key ws* '=' ws* value
//   key      := ident ('.' ident)*
//   value    := text up to end of line (trailing '#' comments stripped)
//
// Lists are comma separated. Numbers accept `2^k` and `10^k` forms.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dzl {

enum class ExperimentId { E1_zero_free, E2_optimality, E3_fourier, E4_quadrature, E5_model_m };

std::string to_string(ExperimentId id);
ExperimentId parse_experiment_id(const std::string& s);

/// Family label plus parameters, e.g. "dk" with k = 2 or "dedekind" with D = −4.
struct FunctionSpec {
    std::string label = "ones";
    double k = 1.0;
    double m = 1.0;
    std::int64_t D = -4;
    std::optional<double> delta;
    std::optional<double> c;

    /// "ones", "mu", "dk:k=2", "dedekind:D=-4", "ones:c=0.1", "ones:delta=0.01".
    static FunctionSpec parse(const std::string& text);
    std::string to_string() const;
};

struct Tolerances {
    double zero_margin = 1e-10;
    double refine = 1e-12;
    double quad_abs = 1e-10;
};

struct ExperimentConfig {
    ExperimentId id = ExperimentId::E3_fourier;
    FunctionSpec function;
    std::vector<double> N;
    double t_lo = -100.0, t_hi = 100.0;
    Tolerances tol;
    std::string output_dir = ".";
    std::string output_stem;  // default: experiment id
    std::uint64_t seed = 1;
    /// Experiment-specific keys not covered above (echoed into the report).
    std::map<std::string, std::string> extra;

    void validate() const;
    double extra_double(const std::string& key, double fallback) const;
    std::vector<double> extra_list(const std::string& key, const std::vector<double>& fallback) const;
    std::string extra_string(const std::string& key, const std::string& fallback) const;
    /// Canonical key/value echo in sorted key order.
    std::map<std::string, std::string> echo() const;
};

/// Throws std::invalid_argument with a line number on malformed input.
ExperimentConfig parse_config(std::istream& is);
ExperimentConfig load_config(const std::string& path);

/// "1e5", "2^17", "10^80", "1000".
double parse_number(const std::string& s);
std::vector<double> parse_number_list(const std::string& s);

}  // namespace dzl
