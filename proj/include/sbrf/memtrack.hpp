#pragma once

// Process-wide heap accounting. Linking sbrf_memtrack replaces the global
// operator new/delete family; every allocation is charged its usable size.

#include <cstdint>

namespace sbrf::memtrack {

std::uint64_t current_bytes();
std::uint64_t peak_bytes();
/// Sets the peak to the current usage and returns it.
std::uint64_t reset_peak();
/// Total calls to operator new since start.
std::uint64_t allocations();

}  // namespace sbrf::memtrack
