#pragma once

#include "pkh/exactla.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace pkh {

// Bigraded homology ranks with torsion, keyed by (gr_h, gr_q).
struct BigradedRanks {
  std::map<std::pair<int, int>, HomologyEntry> entries;

  long total_rank() const;
  // free ranks per doubled delta grading (2*delta = 2h - q)
  std::map<int, long> delta_ranks() const;
  bool operator==(const BigradedRanks& o) const { return entries == o.entries; }
};

// Homology of a bigraded complex, computed per (h, q) block. The
// differential must be homogeneous of bidegree (1, 0).
BigradedRanks homology_summary(const std::vector<std::pair<int, int>>& bigrading,
                               const SparseMatrix& d, const Ring& ring,
                               int threads = 1);

std::string poincare_table(const BigradedRanks& r);
std::string ranks_json(const BigradedRanks& r);

}  // namespace pkh
