#include <algorithm>
#include <cstdio>
#include <limits>
#include <sstream>

#include "sdesign/multi_index.hpp"
#include "sdesign/recipe.hpp"
#include "sdesign/report.hpp"

namespace sdesign {

namespace {

void fill_degree(int n, int pos, int remaining, MultiIndex& cur, std::vector<MultiIndex>& out) {
  if (pos == n - 1) {
    cur[pos] = remaining;
    out.push_back(cur);
    cur[pos] = 0;
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    cur[pos] = e;
    fill_degree(n, pos + 1, remaining - e, cur, out);
  }
  cur[pos] = 0;
}

void fill_multisets(int n, int s, int start, std::vector<int>& cur,
                    std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == s) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    fill_multisets(n, s, i, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<MultiIndex> multi_indices_of_degree(int n, int k) {
  std::vector<MultiIndex> out;
  if (n <= 0 || k < 0) return out;
  MultiIndex cur(n, 0);
  fill_degree(n, 0, k, cur, out);
  return out;
}

std::uint64_t monomial_count(int n, int k) {
  // C(n+k-1, k) computed incrementally; each partial product is itself a binomial.
  unsigned __int128 acc = 1;
  for (int i = 1; i <= k; ++i) {
    acc = acc * static_cast<unsigned>(n - 1 + i) / static_cast<unsigned>(i);
    if (acc > std::numeric_limits<std::uint64_t>::max()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
  }
  return static_cast<std::uint64_t>(acc);
}

std::vector<std::vector<int>> multisets(int n, int s) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  fill_multisets(n, s, 0, cur, out);
  return out;
}

nlohmann::json Recipe::to_json() const {
  nlohmann::json j{{"op", op}, {"params", params}};
  if (!children.empty()) {
    j["children"] = nlohmann::json::array();
    for (const auto& c : children) j["children"].push_back(c.to_json());
  }
  return j;
}

Recipe Recipe::from_json(const nlohmann::json& j) {
  Recipe r;
  r.op = j.at("op").get<std::string>();
  if (j.contains("params")) r.params = j.at("params");
  if (j.contains("children")) {
    for (const auto& c : j.at("children")) r.children.push_back(from_json(c));
  }
  return r;
}

void VerificationReport::record(int degree, double residual) {
  for (auto& entry : per_degree) {
    if (entry.degree == degree) {
      // NaN must never hide behind max().
      if (!(residual <= entry.residual)) entry.residual = residual;
      return;
    }
  }
  per_degree.push_back({degree, residual});
}

void VerificationReport::finish() {
  std::sort(per_degree.begin(), per_degree.end(),
            [](const DegreeResidual& a, const DegreeResidual& b) { return a.degree < b.degree; });
  worst_residual = 0.0;
  for (const auto& entry : per_degree) {
    if (!(entry.residual <= worst_residual)) worst_residual = entry.residual;
  }
  passed = worst_residual <= tolerance;
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json table = nlohmann::json::array();
  for (const auto& e : per_degree) table.push_back({{"degree", e.degree}, {"residual", e.residual}});
  nlohmann::json j{{"method", method},         {"per_degree", table},
                   {"worst_residual", worst_residual}, {"tolerance", tolerance},
                   {"passed", passed},         {"conclusive", conclusive},
                   {"wall_seconds", wall_seconds},     {"threads", threads}};
  if (!note.empty()) j["note"] = note;
  return j;
}

std::string VerificationReport::summary() const {
  std::ostringstream os;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", worst_residual);
  os << method << ": " << (passed ? "PASS" : "FAIL") << " worst=" << buf;
  std::snprintf(buf, sizeof buf, "%.1e", tolerance);
  os << " tol=" << buf;
  if (!conclusive) os << " (necessary condition only)";
  return os.str();
}

}  // namespace sdesign
