#include "pkh/report.hpp"

#include <algorithm>
#include <future>
#include <set>
#include <sstream>

namespace pkh {

long BigradedRanks::total_rank() const {
  long t = 0;
  for (auto& [k, e] : entries) t += e.free_rank;
  return t;
}

std::map<int, long> BigradedRanks::delta_ranks() const {
  std::map<int, long> out;
  for (auto& [k, e] : entries) {
    if (e.free_rank == 0) continue;
    out[2 * k.first - k.second] += e.free_rank;
  }
  return out;
}

BigradedRanks homology_summary(const std::vector<std::pair<int, int>>& bigrading,
                               const SparseMatrix& d, const Ring& ring, int threads) {
  std::map<std::pair<int, int>, std::vector<int>> blocks;
  for (int i = 0; i < (int)bigrading.size(); ++i) blocks[bigrading[i]].push_back(i);

  SparseMatrix dr = (d.ring() == ring) ? d : d.with_ring(ring);

  auto block_matrix = [&](const std::vector<int>& from,
                          const std::vector<int>& to) -> SparseMatrix {
    std::map<int, int> to_pos;
    for (int j = 0; j < (int)to.size(); ++j) to_pos[to[j]] = j;
    SparseMatrix m((int)to.size(), (int)from.size(), ring);
    for (int j = 0; j < (int)from.size(); ++j)
      for (const auto& [r, v] : dr.column(from[j])) {
        auto it = to_pos.find(r);
        if (it != to_pos.end()) m.set(it->second, j, v);
      }
    return m;
  };

  static const std::vector<int> kEmpty;
  auto compute = [&](const std::pair<int, int>& hq) -> HomologyEntry {
    const auto& here = blocks.at(hq);
    auto fin = blocks.find({hq.first - 1, hq.second});
    auto fout = blocks.find({hq.first + 1, hq.second});
    const std::vector<int>& in = (fin != blocks.end()) ? fin->second : kEmpty;
    const std::vector<int>& out = (fout != blocks.end()) ? fout->second : kEmpty;
    return homology(block_matrix(in, here), block_matrix(here, out));
  };

  BigradedRanks result;
  std::vector<std::pair<int, int>> keys;
  for (auto& [hq, idx] : blocks) keys.push_back(hq);

  if (threads > 1) {
    std::vector<std::future<HomologyEntry>> futs;
    for (auto& hq : keys)
      futs.push_back(std::async(std::launch::async, [&, hq] { return compute(hq); }));
    for (size_t i = 0; i < keys.size(); ++i) {
      HomologyEntry e = futs[i].get();
      if (e.free_rank != 0 || !e.torsion.empty()) result.entries[keys[i]] = e;
    }
  } else {
    for (auto& hq : keys) {
      HomologyEntry e = compute(hq);
      if (e.free_rank != 0 || !e.torsion.empty()) result.entries[hq] = e;
    }
  }
  return result;
}

namespace {

std::string cell_text(const HomologyEntry& e) {
  std::string s = std::to_string(e.free_rank);
  if (!e.torsion.empty()) {
    s += "+[";
    for (size_t i = 0; i < e.torsion.size(); ++i) {
      if (i) s += ",";
      s += e.torsion[i].get_str();
    }
    s += "]";
  }
  return s;
}

}  // namespace

std::string poincare_table(const BigradedRanks& r) {
  if (r.entries.empty()) return "(trivial)\n";
  std::set<int> hs, qs;
  for (auto& [k, e] : r.entries) {
    hs.insert(k.first);
    qs.insert(k.second);
  }
  size_t width = 6;
  for (auto& [k, e] : r.entries) width = std::max(width, cell_text(e).size() + 1);

  std::ostringstream os;
  os << "h\\q";
  os << std::string(width > 3 ? width - 3 : 1, ' ');
  for (int q : qs) {
    std::string s = std::to_string(q);
    os << s << std::string(width > s.size() ? width - s.size() : 1, ' ');
  }
  os << "\n";
  for (int h : hs) {
    std::string hh = std::to_string(h);
    os << hh << std::string(width > hh.size() ? width - hh.size() : 1, ' ');
    for (int q : qs) {
      auto it = r.entries.find({h, q});
      std::string s = (it == r.entries.end()) ? "." : cell_text(it->second);
      os << s << std::string(width > s.size() ? width - s.size() : 1, ' ');
    }
    os << "\n";
  }
  return os.str();
}

std::string ranks_json(const BigradedRanks& r) {
  std::ostringstream os;
  os << "[";
  bool first = true;
  for (auto& [k, e] : r.entries) {
    if (!first) os << ",";
    first = false;
    os << "{\"h\":" << k.first << ",\"q\":" << k.second << ",\"rank\":" << e.free_rank;
    os << ",\"torsion\":[";
    for (size_t i = 0; i < e.torsion.size(); ++i) {
      if (i) os << ",";
      os << e.torsion[i].get_str();
    }
    os << "]}";
  }
  os << "]";
  return os.str();
}

}  // namespace pkh
