#include "distclust/datagen.hpp"

#include <vector>

namespace distclust {

std::string_view family_name(Family f) {
    switch (f) {
        case Family::normal: return "normal";
        case Family::exponential: return "exponential";
        case Family::gamma: return "gamma";
    }
    return "unknown";
}

std::optional<Family> parse_family(std::string_view name) {
    if (name == "normal") return Family::normal;
    if (name == "exponential") return Family::exponential;
    if (name == "gamma") return Family::gamma;
    return std::nullopt;
}

DataMatrix generate(const GenSpec& spec) {
    if (spec.rows == 0 || spec.cols == 0) {
        throw InvalidArgument("generate: N and p must be >= 1");
    }
    if (!(spec.rate > 0.0)) throw InvalidArgument("generate: rate must be > 0");
    if (spec.family == Family::gamma && !(spec.shape > 0.0)) {
        throw InvalidArgument("generate: gamma shape must be > 0");
    }
    Rng rng(spec.seed);
    std::vector<double> values(spec.rows * spec.cols);
    for (double& v : values) {
        switch (spec.family) {
            case Family::normal: v = rng.normal(); break;
            case Family::exponential: v = rng.exponential(spec.rate); break;
            case Family::gamma: v = rng.gamma(spec.shape, spec.rate); break;
        }
    }
    return {std::move(values), spec.rows, spec.cols};
}

}  // namespace distclust
