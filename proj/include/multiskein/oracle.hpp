#pragma once

#include <array>
#include <vector>

#include "multiskein/diagram.hpp"
#include "multiskein/laurent.hpp"

namespace multiskein::oracle {

// Self-contained link representation for the oracles. Crossing slots run
// counterclockwise, the under strand occupies slots 0 and 2, the over strand
// 1 and 3; under_in / over_in record the orientation.
struct Crossing {
  std::array<int, 4> edge;
  int under_in = 0;  // 0 or 2
  int over_in = 1;   // 1 or 3
};

struct Link {
  std::vector<Crossing> crossings;
  int loops = 0;
};

Link from_diagram(const MarkedDiagram& d);
int sign(const Crossing& c);
int writhe(const Link& l);

struct OracleOptions {
  int crossing_cap = 12;
};

// Oriented 3-term skein P(L+) + b P(L-) + c1 P(L0) = 0 over Z[b^+-1, c1^+-1],
// P(unknot) = 1. Generators "b", "c1".
Laurent homfly(const MarkedDiagram& d, const OracleOptions& opt = {});

// Dubrovnik polynomial over Z[A^+-1, z^+-1]: writhe-normalized, F(unknot) = 1.
Laurent dubrovnik(const MarkedDiagram& d, const OracleOptions& opt = {});
// The regular-isotopy version (no writhe factor).
Laurent dubrovnik_hat(const MarkedDiagram& d, const OracleOptions& opt = {});

}  // namespace multiskein::oracle
