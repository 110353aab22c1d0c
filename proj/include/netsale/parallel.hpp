#ifndef NETSALE_PARALLEL_HPP
#define NETSALE_PARALLEL_HPP

#include <functional>

namespace netsale {

// Worker count: `requested` if positive, otherwise the NETSALE_THREADS
// environment variable, otherwise what the hardware offers. Never less
// than 1.
int resolve_threads(int requested = 0);

// Splits [0, total) into fixed chunks of size `chunk` and calls
// fn(chunk_index, begin, end) once per chunk, distributed over `threads`
// workers. Chunk boundaries do not depend on the worker count, so a caller
// that stores per-chunk results and folds them in chunk order gets the same
// answer no matter how the work was scheduled.
void run_chunks(long long total, long long chunk, int threads,
                const std::function<void(long long, long long, long long)>& fn);

} // namespace netsale

#endif
