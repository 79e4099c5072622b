#pragma once

#include "robmom/distributions.hpp"
#include "robmom/moment_set.hpp"

#include <string>
#include <vector>

namespace robmom {

/// A published closed form or tabulated value for a population moment.
struct PublishedValue {
    std::string quantity;  // e.g. "delta2", "gamma4", "phi4"
    std::size_t order = 0;
    bool is_ratio = false;
    double value = 0.0;
    double tolerance = 0.0;  // absolute
    std::string formula;     // as published
};

struct Discrepancy {
    std::string quantity;
    std::string distribution;
    std::string formula;
    double published = 0.0;
    double computed = 0.0;
    double tolerance = 0.0;
};

/// Published values known for `model` in the given population system
/// (mad_population or medad_population). Empty when none are tabulated.
[[nodiscard]] std::vector<PublishedValue> published_values(const Distribution& model,
                                                           MomentSystem system);

/// Entries of published_values that `moments` misses by more than their tolerance.
[[nodiscard]] std::vector<Discrepancy> find_discrepancies(const Distribution& model,
                                                          const MomentSet& moments);

}  // namespace robmom
