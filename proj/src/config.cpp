#include "dtwc/config.hpp"

#include <cmath>
#include <string>

#include "dtwc/errors.hpp"

namespace dtwc {

void PipelineConfig::validate() const {
    if (k < 1) throw ValidationError("k must be >= 1");
    if (ell < 1) throw ValidationError("ell must be >= 1");
    if (!(p >= 1.0) || !std::isfinite(p)) throw ValidationError("p must be >= 1");
    if (!(eps > 0.0 && eps <= 1.0)) throw ValidationError("eps must lie in (0, 1]");
    if (!(delta > 0.0 && delta < 1.0)) throw ValidationError("delta must lie in (0, 1)");
    if (size_override && *size_override < 1) throw ValidationError("size override must be >= 1");
    if (!(sample_constant > 0.0) || !std::isfinite(sample_constant)) {
        throw ValidationError("sample constant must be positive");
    }
    if (alpha_override && !(*alpha_override > 0.0)) throw ValidationError("alpha must be positive");
    if (repetitions < 1) throw ValidationError("repetitions must be >= 1");
}

}  // namespace dtwc
