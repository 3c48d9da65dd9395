#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bihamil/ring/scalar.hpp"

namespace bihamil {

using Point = std::vector<Rational>;

// Named coordinate system; cheap to copy (shared immutable data).
class Chart {
 public:
  Chart();
  Chart(std::string name, std::vector<std::string> coords);

  const std::string& name() const { return d_->name; }
  const std::vector<std::string>& coords() const { return d_->coords; }
  std::size_t dim() const { return d_->coords.size(); }
  const std::string& coord(std::size_t i) const { return d_->coords.at(i); }
  std::optional<std::size_t> index_of(const std::string& coord) const;
  std::size_t require_index(const std::string& coord) const;  // throws PreconditionError

  Scalar coordinate(std::size_t i) const { return Scalar::variable(dim(), i); }
  Scalar parse(const std::string& text) const;
  std::string render(const Scalar& s) const;

  friend bool operator==(const Chart& a, const Chart& b) {
    return a.d_ == b.d_ || (a.d_->name == b.d_->name && a.d_->coords == b.d_->coords);
  }
  friend bool operator!=(const Chart& a, const Chart& b) { return !(a == b); }

 private:
  struct Data {
    std::string name;
    std::vector<std::string> coords;
  };
  std::shared_ptr<const Data> d_;
};

void require_same_chart(const Chart& a, const Chart& b);

// Strictly increasing list of coordinate indices.
using MultiIndex = std::vector<int>;

// Sorts `idx` in place; returns the permutation sign, or 0 on a repeated index.
int sort_with_sign(MultiIndex& idx);
// All strictly increasing k-subsets of {0..n-1} in lexicographic order.
std::vector<MultiIndex> increasing_indices(std::size_t n, std::size_t k);

// A map from coordinates of `from` into `to`: to-index of each from-coordinate,
// or -1 for coordinates that are dropped (they must then be substituted).
struct ChartMap {
  Chart from;
  Chart to;
  std::vector<int> index;  // size from.dim()
  std::vector<std::pair<std::size_t, Rational>> substitutions;  // from-coordinate := value
  // Coordinates shared by name; others are dropped and set to zero.
  static ChartMap by_name(const Chart& from, const Chart& to);
  Scalar apply(const Scalar& s) const;
};

}  // namespace bihamil
