#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

namespace dtwc {

struct PipelineConfig {
    std::size_t k = 1;
    std::size_t ell = 1;
    double p = 1.0;
    double eps = 0.5;
    double delta = 0.1;
    std::uint64_t seed = 0;
    std::optional<std::size_t> size_override;
    // Stand-in for the unspecified absolute constant of the (eta, eps)-approximation bound.
    double sample_constant = 0.05;
    std::optional<double> alpha_override;
    std::size_t repetitions = 3;

    // Throws ValidationError on any out-of-range field.
    void validate() const;
};

}  // namespace dtwc
