#pragma once

#include <cstddef>
#include <functional>

namespace dforge {

/// Runs body(i) for i in [0, count) on up to `threads` workers. Work is
/// assigned round-robin by index; the first exception by index is rethrown
/// after all workers join.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace dforge
