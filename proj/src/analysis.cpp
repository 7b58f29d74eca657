#include "planesearch/analysis.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace planesearch {

std::vector<double> gaps_at(const std::vector<CsvRow>& rows, const std::string& method, const std::string& function,
                            int dim, int iteration) {
  std::vector<std::pair<int, double>> found;
  for (const CsvRow& r : rows)
    if (r.error.empty() && r.method == method && r.function == function && r.dim == dim && r.iteration == iteration)
      found.emplace_back(r.trial, r.optimality_gap);
  std::sort(found.begin(), found.end());
  std::vector<double> out;
  for (const auto& [trial, gap] : found) out.push_back(gap);
  return out;
}

std::vector<Comparison> compare_at_iteration(const std::vector<CsvRow>& rows, int iteration, double alpha) {
  // Keep methods in first-appearance order.
  std::vector<std::pair<std::string, int>> groups;
  std::map<std::pair<std::string, int>, std::vector<std::string>> methods;
  for (const CsvRow& r : rows) {
    const auto key = std::make_pair(r.function, r.dim);
    if (std::find(groups.begin(), groups.end(), key) == groups.end()) groups.push_back(key);
    auto& list = methods[key];
    if (std::find(list.begin(), list.end(), r.method) == list.end()) list.push_back(r.method);
  }

  std::vector<Comparison> out;
  for (const auto& key : groups) {
    Comparison cmp;
    cmp.function = key.first;
    cmp.dim = key.second;
    cmp.iteration = iteration;
    const auto& list = methods[key];
    std::vector<std::vector<double>> gaps;
    for (const std::string& m : list) {
      gaps.push_back(gaps_at(rows, m, key.first, key.second, iteration));
      const auto& g = gaps.back();
      MethodSummary s{m, static_cast<int>(g.size()), 0.0, 0.0};
      if (!g.empty()) {
        s.mean_gap = stats::mean(g);
        s.median_gap = stats::median(g);
      }
      cmp.methods.push_back(s);
    }
    const int pair_count = static_cast<int>(list.size() * (list.size() - 1) / 2);
    for (std::size_t a = 0; a < list.size(); ++a)
      for (std::size_t b = a + 1; b < list.size(); ++b) {
        if (gaps[a].empty() || gaps[b].empty()) continue;
        PairComparison pc;
        pc.first = list[a];
        pc.second = list[b];
        pc.test = stats::mann_whitney_u(gaps[a], gaps[b]);
        pc.alpha = stats::bonferroni_alpha(alpha, std::max(1, pair_count));
        pc.significant = pc.test.p_two_sided < pc.alpha;
        cmp.pairs.push_back(pc);
      }
    out.push_back(std::move(cmp));
  }
  return out;
}

}  // namespace planesearch
