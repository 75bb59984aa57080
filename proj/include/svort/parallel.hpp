#pragma once

#include <functional>

namespace svort {

// Runs fn(0..blocks-1) across a small thread pool and returns once every
// block finished.  Blocks are claimed from an atomic counter, so the set of
// blocks executed is fixed while their assignment to threads is not; callers
// that need deterministic output must make each block self-contained and
// reduce the per-block results in index order afterwards.
//
// threads == 0 picks hardware_concurrency (capped at the block count).  The
// first exception thrown by any block is rethrown on the calling thread after
// the pool drains.
void run_blocks(int blocks, const std::function<void(int)>& fn, unsigned threads = 0);

}  // namespace svort
