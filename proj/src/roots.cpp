#include "upkit/roots.hpp"

#include <algorithm>
#include <mutex>
#include <tuple>

namespace upkit {

std::string Root::label() const {
  if (name.j == -name.i) return "2e" + std::to_string(name.i);
  if (name.j > 0) return "e" + std::to_string(name.i) + "-e" + std::to_string(name.j);
  return "e" + std::to_string(name.i) + "+e" + std::to_string(-name.j);
}

std::vector<Root> positive_roots(int n) {
  if (n < 2) throw Error(Errc::RankTooSmall, "rank must be at least 2");
  std::vector<Root> out;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      Root r;
      r.name = {i, j};
      r.m.assign(n, 0);
      for (int k = i; k < j; ++k) r.m[k - 1] = 1;
      r.row = i;
      r.col = j;
      out.push_back(r);
    }
    for (int j = i; j <= n; ++j) {
      Root r;
      r.name = {i, -j};
      r.m.assign(n, 0);
      for (int k = i; k < j; ++k) r.m[k - 1] = 1;
      for (int k = j; k < n; ++k) r.m[k - 1] = 2;
      r.m[n - 1] = 1;
      r.is_long = (i == j);
      r.row = i;
      r.col = 2 * n + 1 - j;
      out.push_back(r);
    }
  }
  for (auto& r : out) {
    r.height = 0;
    for (int x : r.m) r.height += x;
  }
  std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) {
    return std::tie(a.height, a.row, a.col) < std::tie(b.height, b.row, b.col);
  });
  return out;
}

RootSystem::RootSystem(int n) : n_(n), roots_(positive_roots(n)) {
  at_.assign(4 * n * n, -1);
  by_height_.resize(2 * n);
  for (RootId id = 0; id < size(); ++id) {
    const auto& r = roots_[id];
    by_name_[r.name] = id;
    by_m_[r.m] = id;
    at_[(r.row - 1) * 2 * n + (r.col - 1)] = id;
    by_height_[r.height].push_back(id);
    if (r.height == 2 * n - 1) max_ = id;
  }
  for (int i = 1; i < n; ++i) simple_.push_back(id({i, i + 1}));
  simple_.push_back(id({n, -n}));
}

std::shared_ptr<const RootSystem> RootSystem::make(int n) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const RootSystem>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_shared<const RootSystem>(n);
  return slot;
}

RootId RootSystem::id(const RootName& name) const {
  auto r = find(name);
  if (!r) throw Error(Errc::BadIndices, "no root (" + std::to_string(name.i) + "," + std::to_string(name.j) + ")");
  return *r;
}

std::optional<RootId> RootSystem::find(const RootName& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::optional<RootId> RootSystem::from_m(const std::vector<int>& m) const {
  auto it = by_m_.find(m);
  if (it == by_m_.end()) return std::nullopt;
  return it->second;
}

std::optional<RootId> RootSystem::at(int row, int col) const {
  if (row < 1 || col < 1 || row > 2 * n_ || col > 2 * n_) return std::nullopt;
  int v = at_[(row - 1) * 2 * n_ + (col - 1)];
  if (v < 0) return std::nullopt;
  return v;
}

std::optional<RootId> RootSystem::sum(RootId a, RootId b) const {
  std::vector<int> m(n_);
  for (int k = 0; k < n_; ++k) m[k] = roots_[a].m[k] + roots_[b].m[k];
  return from_m(m);
}

std::optional<RootId> RootSystem::diff(RootId a, RootId b) const {
  std::vector<int> m(n_);
  for (int k = 0; k < n_; ++k) m[k] = roots_[a].m[k] - roots_[b].m[k];
  return from_m(m);
}

std::vector<RootId> RootSystem::perp(RootId a) const {
  std::vector<RootId> out;
  for (RootId b = 0; b < size(); ++b)
    if (!sum(a, b)) out.push_back(b);
  return out;
}

RootId RootSystem::chain(int i, int j) const {
  std::vector<int> m(n_, 0);
  for (int k = i; k <= j; ++k) m[k - 1] = 1;
  auto r = from_m(m);
  if (!r) throw Error(Errc::BadIndices, "not a root chain");
  return *r;
}

int StructureConstants::n1(RootId a, RootId b) const {
  auto it = N1.find({a, b});
  if (it == N1.end()) throw Error(Errc::BadIndices, "no structure constant for pair");
  return it->second;
}

int StructureConstants::n2(RootId a, RootId b) const {
  auto it = N2.find({a, b});
  if (it == N2.end()) throw Error(Errc::BadIndices, "no second structure constant for pair");
  return it->second;
}

}  // namespace upkit
