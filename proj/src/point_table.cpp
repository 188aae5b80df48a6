#include "nfold/point_table.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace nfold {

namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

PointTable::PointTable(int dim) : dim_(dim) { rehash(16); }

std::uint64_t PointTable::hash(std::span<const Int> p) const {
  std::uint64_t h = 0x51ed27a1ULL;
  for (Int v : p) h = mix(h ^ static_cast<std::uint64_t>(v));
  return h;
}

std::size_t PointTable::probe(std::span<const Int> p, std::uint64_t h) const {
  const std::size_t mask = slots_.size() - 1;
  std::size_t pos = h & mask;
  while (true) {
    const std::uint32_t s = slots_[pos];
    if (s == 0) return pos;
    const auto cell = static_cast<std::size_t>(s - 1);
    if (std::equal(p.begin(), p.end(), coords_.begin() + static_cast<std::ptrdiff_t>(cell * dim_))) return pos;
    pos = (pos + 1) & mask;
  }
}

void PointTable::rehash(std::size_t capacity) {
  std::size_t cap = 16;
  while (cap < capacity) cap <<= 1;
  slots_.assign(cap, 0);
  for (std::size_t cell = 0; cell < size(); ++cell) {
    const auto p = point(cell);
    slots_[probe(p, hash(p))] = static_cast<std::uint32_t>(cell + 1);
  }
}

void PointTable::reserve(std::size_t cells) {
  coords_.reserve(cells * static_cast<std::size_t>(dim_));
  values_.reserve(cells);
  origins_.reserve(cells);
  if (cells * 2 > slots_.size()) rehash(cells * 2);
}

std::optional<std::size_t> PointTable::find(std::span<const Int> p) const {
  const std::uint32_t s = slots_[probe(p, hash(p))];
  if (s == 0) return std::nullopt;
  return static_cast<std::size_t>(s - 1);
}

bool PointTable::offer(std::span<const Int> p, Int value, Origin origin) {
  const std::size_t pos = probe(p, hash(p));
  if (const std::uint32_t s = slots_[pos]; s != 0) {
    const auto cell = static_cast<std::size_t>(s - 1);
    if (value > values_[cell]) {
      values_[cell] = value;
      origins_[cell] = origin;
      return true;
    }
    return false;
  }
  if (size() >= 0xfffffff0u) throw std::length_error("point table exceeds 2^32 cells");
  sealed_ = false;
  coords_.insert(coords_.end(), p.begin(), p.end());
  values_.push_back(value);
  origins_.push_back(origin);
  slots_[pos] = static_cast<std::uint32_t>(size());
  if (size() * 2 > slots_.size()) rehash(slots_.size() * 2);
  return true;
}

void PointTable::seal() {
  if (sealed_) return;
  std::vector<std::size_t> order(size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto pa = point(a);
    const auto pb = point(b);
    return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
  });
  std::vector<Int> coords;
  std::vector<Int> values;
  std::vector<Origin> origins;
  coords.reserve(coords_.size());
  values.reserve(size());
  origins.reserve(size());
  for (std::size_t cell : order) {
    const auto p = point(cell);
    coords.insert(coords.end(), p.begin(), p.end());
    values.push_back(values_[cell]);
    origins.push_back(origins_[cell]);
  }
  coords_ = std::move(coords);
  values_ = std::move(values);
  origins_ = std::move(origins);
  rehash(slots_.size());
  sealed_ = true;
}

std::pair<std::size_t, std::size_t> PointTable::first_axis_range(Int lo, Int hi) const {
  if (dim_ == 0 || empty()) return {0, size()};
  if (!sealed_) throw std::logic_error("first_axis_range on an unsealed table");
  std::size_t a = 0, b = size();
  // lower bound for lo
  std::size_t l = 0, r = size();
  while (l < r) {
    const std::size_t mid = (l + r) / 2;
    if (coords_[mid * dim_] < lo) l = mid + 1; else r = mid;
  }
  a = l;
  r = size();
  while (l < r) {
    const std::size_t mid = (l + r) / 2;
    if (coords_[mid * dim_] <= hi) l = mid + 1; else r = mid;
  }
  b = l;
  return {a, b};
}

std::vector<std::vector<Int>> PointTable::points() const {
  std::vector<std::vector<Int>> out;
  out.reserve(size());
  for (std::size_t cell = 0; cell < size(); ++cell) {
    const auto p = point(cell);
    out.emplace_back(p.begin(), p.end());
  }
  return out;
}

}  // namespace nfold
