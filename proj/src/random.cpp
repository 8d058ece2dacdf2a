#include "dtwc/random.hpp"

#include <numeric>
#include <string>
#include <utility>

#include "dtwc/errors.hpp"

namespace dtwc {

std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t count, std::uint64_t seed) {
    if (count > n) {
        throw ValidationError("cannot sample " + std::to_string(count) + " of " + std::to_string(n) +
                              " items without replacement");
    }
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    Rng rng = make_rng(seed);
    // Partial Fisher-Yates.
    for (std::size_t i = 0; i < count; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, n - 1);
        std::swap(pool[i], pool[pick(rng)]);
    }
    pool.resize(count);
    return pool;
}

}  // namespace dtwc
