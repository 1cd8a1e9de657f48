#pragma once

// k-partite vertex layout: part j occupies indices [j*N, (j+1)*N), i.e.
// vertex (j,z) sits at j*N + z. Integer division by N recovers the part.

#include "lotteryforge/common.hpp"

namespace lotteryforge {

struct PartiteLayout {
  int parts;      // k
  int part_size;  // N

  PartiteLayout(int parts_, int part_size_)
      : parts(parts_), part_size(part_size_) {
    if (parts < 1 || part_size < 1)
      throw parameter_error("PartiteLayout: parts and part size must be positive");
  }

  int total() const { return parts * part_size; }
  int vertex(int part, int z) const { return part * part_size + z; }
  int part_of(int v) const { return v / part_size; }
  int offset_of(int v) const { return v % part_size; }
};

}  // namespace lotteryforge
