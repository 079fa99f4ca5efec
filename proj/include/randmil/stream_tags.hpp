#pragma once

#include <cstdint>

namespace randmil::stream_tag {

// Purpose tags for RngStream::derive. The layout used throughout the
// library, per Monte Carlo sample index i and master stream M:
//   M.derive(i).derive(wiener)            -> Gaussian draws of the sample's
//                                            WienerPath
//   M.derive(i).derive(run).derive(ctx)   -> stream handed to integrate()
//                                            for one (scheme, grid) context;
//                                            integrate derives `tau` from it
// Keeping tau draws and Gaussian draws in separate purpose-tagged substreams
// mirrors the independence of the randomization variables from the driving
// Wiener process.
inline constexpr std::uint64_t wiener = 0x77u;
inline constexpr std::uint64_t tau = 0x74u;
inline constexpr std::uint64_t run = 0x72u;

}  // namespace randmil::stream_tag
