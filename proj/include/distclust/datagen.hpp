#ifndef DISTCLUST_DATAGEN_HPP
#define DISTCLUST_DATAGEN_HPP

#include <cstdint>
#include <optional>
#include <string_view>

#include "distclust/core.hpp"

namespace distclust {

enum class Family { normal, exponential, gamma };

std::string_view family_name(Family f);
std::optional<Family> parse_family(std::string_view name);

struct GenSpec {
    Family family = Family::normal;
    double shape = 1.0;  // gamma only
    double rate = 1.0;   // exponential and gamma
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::uint64_t seed = 0;
};

/// rows x cols matrix of i.i.d. draws, filled in row-major order from one
/// seeded stream. For a fixed column count, asking for more rows leaves the
/// earlier rows unchanged.
DataMatrix generate(const GenSpec& spec);

}  // namespace distclust

#endif  // DISTCLUST_DATAGEN_HPP
