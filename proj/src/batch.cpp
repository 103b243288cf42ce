#include "wegan/batch.hpp"

namespace wegan {

Batch::Batch(std::size_t r, std::size_t c, double fill) : rows(r), cols(c), values(r * c, fill) {}

Batch column(std::span<const double> values) {
    Batch out(values.size(), 1);
    for (std::size_t i = 0; i < values.size(); ++i) out.values[i] = values[i];
    return out;
}

}  // namespace wegan
