#pragma once

#include "pkh/hfkcube.hpp"

#include "json.hpp"

namespace pkh {

using ordered_json = nlohmann::ordered_json;

ordered_json diagram_json(const LinkDiagram& d, const Coloring& col);
ordered_json resolution_json(const LinkDiagram& d, const Resolution& r);

// basis + differential of a bigraded complex; labels are preformatted
ordered_json complex_json(const std::vector<std::string>& labels,
                          const std::vector<std::pair<int, int>>& bigradings,
                          const SparseMatrix& d);

std::vector<std::string> kh_labels(const KhComplex& K);
// (u,v)-bicube coordinates of the pointed basis
std::vector<std::string> pointed_labels(const PointedComplex& P);

ordered_json ranks_to_json(const BigradedRanks& r);
ordered_json pages_json(const PageReport& rep);
ordered_json hfk_e1_json(const HfkE1& E);
ordered_json compare_json(const CompareE1Report& rep);

std::string table_by_delta(const std::map<int, long>& delta_ranks);
std::string table_by_level(const std::map<std::pair<int, int>, long>& t,
                           const char* col_name);

}  // namespace pkh
