#pragma once

#include <string>
#include <vector>

#include "spir/scheme.hpp"

namespace spir {

enum class CanonicalName {
  k2_u2,      // K=2: 1-bit queries each side, 1-bit answers, 1 random bit
  k3_u2log3,  // K=3: ternary queries, asymmetric 2+1 bit answers, 2 random bits
  k3_u4,      // K=3: 2-bit queries each side, 1-bit answers, 1 random bit
  k4_u4,      // K=4: 2-bit queries each side, 2-bit answers, 4 random bits
};

std::vector<CanonicalName> list_canonical();
std::string format_canonical(CanonicalName name);
// Throws Error on an unknown name.
CanonicalName parse_canonical(const std::string& text);

// The named ready-made scheme (binary messages, length 1). Each verifies
// clean: reliability, user privacy, database privacy.
Scheme canonical_scheme(CanonicalName name);

// K -> 2K message-count doubling. Query spaces gain one leading bit per
// side, answers double in length, and the randomness pool grows fourfold so
// the four (bit_x, bit_y) sectors mask independently. The input must verify
// clean, and the output is re-verified before being returned.
Scheme double_scheme(const Scheme& s);

// L-fold repetition: message length becomes L, randomness L-fold, answers
// are the per-copy answers concatenated. Requires a clean scheme with L=1.
// repeat_scheme(s, 1) returns s unchanged.
Scheme repeat_scheme(const Scheme& s, int copies);

struct RegionPoint {
  double upload_bits;
  double download_bits;
  double total_bits;
  std::string witness_scheme;  // canonical scheme name achieving the point
};

// The achievable (upload, download) corner points for K messages of length
// L. Known exactly for K=3, L=1 (two corners); anything else throws Error.
std::vector<RegionPoint> region_points(int message_count, int message_length);

}  // namespace spir
