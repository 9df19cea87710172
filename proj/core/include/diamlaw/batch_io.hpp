#ifndef DIAMLAW_BATCH_IO_HPP
#define DIAMLAW_BATCH_IO_HPP

#include <iosfwd>

#include "diamlaw/sampling.hpp"

namespace diamlaw {

// Point dumps.  Both formats carry (a, method, master_seed, stream_index, n).
//
// CSV:    "# diamlaw-batch a=<a> method=<m> master_seed=<s> stream_index=<i> n=<n>"
//         "x1,x2,x3"
//         one row per point, %.17g
//
// Binary (little-endian):
//         magic "DLPB", u32 version = 1, f64 a, u32 method, u64 master_seed,
//         u64 stream_index, u64 n, then n * 3 f64.

void write_batch_csv(std::ostream& out, const SampleBatch& batch);
void write_batch_binary(std::ostream& out, const SampleBatch& batch);

/// Throws std::runtime_error on a malformed stream.
SampleBatch read_batch_binary(std::istream& in);

}  // namespace diamlaw

#endif  // DIAMLAW_BATCH_IO_HPP
