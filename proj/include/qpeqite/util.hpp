#pragma once

#include <cstddef>
#include <functional>
#include <string>

namespace qpeqite {

// Shared float formatting for every exporter (12 significant digits) so that
// repeated runs and golden files are byte-identical.
std::string format_real(double v);

// Runs fn(i) for i in [0, n). With jobs > 1 the index range is split into
// contiguous chunks, one thread per chunk; callers write results into
// pre-sized per-index slots, so output is deterministic regardless of jobs.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn);

}
