#pragma once

#include <functional>

namespace vdm {

/// Worker cap for parallel loops. Defaults to 1; VDMKIT_THREADS overrides the
/// default, set_max_threads overrides both.
int max_threads();
void set_max_threads(int threads);

/// Runs fn(i) for i in [begin, end). Each index is processed exactly once and
/// writes only its own outputs, so results do not depend on the thread count.
void parallel_for(int begin, int end, const std::function<void(int)>& fn);

} // namespace vdm
