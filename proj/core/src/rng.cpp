#include "hhgso/rng.hpp"

#include <algorithm>
#include <stdexcept>

namespace hhgso {

std::size_t RngStream::next_int(std::size_t n) {
    if (n == 0) {
        throw std::invalid_argument("next_int: n must be >= 1");
    }
    const auto value = static_cast<std::size_t>(next_unit() * static_cast<double>(n));
    return std::min(value, n - 1);
}

} // namespace hhgso
