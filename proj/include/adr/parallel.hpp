#pragma once

#include <functional>

namespace adr {

// Worker cap from ADER_ADR_THREADS (0 or unset = hardware concurrency).
// Malformed or negative values raise ConfigError.
int thread_budget();

// Runs f(0..n-1) on up to thread_budget() workers. Tasks must write disjoint
// state; the caller owns any reduction so results stay order-independent.
void parallel_for(int n, const std::function<void(int)>& f);

}  // namespace adr
