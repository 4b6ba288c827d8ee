#pragma once

#include <string>

#include "ans/field.hpp"

namespace ans {

/// Binary field file: magic "ANS1", format version u16, N u32, L f64,
/// time f64, component count u8 (= 2), then 2*N*N (re, im) f64 pairs in
/// linear mode order. All integers and floats are little-endian regardless
/// of host; round trips are bit-exact.
void write_snapshot(const SpectralField& f, const std::string& path, double time = 0.0);

/// Reads a snapshot, validates the field invariants, and optionally returns
/// the stored time stamp.
SpectralField read_snapshot(const std::string& path, double* time_out = nullptr);

}  // namespace ans
