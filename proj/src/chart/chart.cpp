#include "bihamil/chart/chart.hpp"

#include <algorithm>
#include <set>

#include "bihamil/errors.hpp"
#include "bihamil/ring/parse.hpp"

namespace bihamil {

Chart::Chart() : d_(std::make_shared<const Data>(Data{"", {}})) {}

Chart::Chart(std::string name, std::vector<std::string> coords) {
  std::set<std::string> seen;
  for (const auto& c : coords) {
    if (!is_identifier(c)) throw PreconditionError("invalid coordinate name '" + c + "'");
    if (!seen.insert(c).second) throw PreconditionError("duplicate coordinate name '" + c + "'");
  }
  d_ = std::make_shared<const Data>(Data{std::move(name), std::move(coords)});
}

std::optional<std::size_t> Chart::index_of(const std::string& coord) const {
  const auto& c = d_->coords;
  auto it = std::find(c.begin(), c.end(), coord);
  if (it == c.end()) return std::nullopt;
  return static_cast<std::size_t>(it - c.begin());
}

std::size_t Chart::require_index(const std::string& coord) const {
  auto i = index_of(coord);
  if (!i) throw PreconditionError("coordinate '" + coord + "' is not in chart '" + name() + "'");
  return *i;
}

Scalar Chart::parse(const std::string& text) const { return parse_scalar(text, coords()); }

std::string Chart::render(const Scalar& s) const { return bihamil::render(s, coords()); }

void require_same_chart(const Chart& a, const Chart& b) {
  if (a != b) throw PreconditionError("fields live on different charts ('" + a.name() + "' vs '" + b.name() + "')");
}

int sort_with_sign(MultiIndex& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i) {
    for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
      if (idx[j - 1] == idx[j]) return 0;
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  }
  return sign;
}

std::vector<MultiIndex> increasing_indices(std::size_t n, std::size_t k) {
  std::vector<MultiIndex> out;
  if (k > n) return out;
  MultiIndex cur(k);
  for (std::size_t i = 0; i < k; ++i) cur[i] = static_cast<int>(i);
  for (;;) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == static_cast<int>(n - k + i - 1)) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

ChartMap ChartMap::by_name(const Chart& from, const Chart& to) {
  ChartMap m{from, to, std::vector<int>(from.dim(), -1), {}};
  for (std::size_t i = 0; i < from.dim(); ++i) {
    auto j = to.index_of(from.coord(i));
    if (j)
      m.index[i] = static_cast<int>(*j);
    else
      m.substitutions.emplace_back(i, Rational(0));
  }
  return m;
}

Scalar ChartMap::apply(const Scalar& s) const {
  Scalar r = s;
  for (const auto& [var, value] : substitutions) r = r.substitute(var, value);
  if (r.is_constant()) return Scalar(r.constant_value());
  return r.reindex(to.dim(), index);
}

}  // namespace bihamil
