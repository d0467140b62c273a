#include "jetlc/coords.hpp"

#include <array>
#include <utility>

#include "jetlc/rational.hpp"

namespace jetlc {

UnsupportedDimension::UnsupportedDimension(int n)
    : std::invalid_argument("unsupported dimension " + std::to_string(n) +
                            " (supported: 2 <= n <= 4)") {}

void require_dimension(int n) {
  if (n < 2 || n > kMaxDimension) throw UnsupportedDimension(n);
}

namespace {

int pair_index(int i, int j) {
  if (i > j) std::swap(i, j);
  // row-major enumeration of i <= j for n = 4
  return i * kMaxDimension - i * (i - 1) / 2 + (j - i);
}

void check_index(int v) {
  if (v < 0 || v >= kMaxDimension) throw std::out_of_range("jet coordinate index out of range");
}

}  // namespace

int metric_slot(int i, int j) { return kMaxDimension + pair_index(i, j); }

int metric_jet_slot(int i, int j, int k) {
  return kMaxDimension + 10 + pair_index(i, j) * kMaxDimension + k;
}

JetCoordinate JetCoordinate::base(int k) {
  check_index(k);
  return {CoordKind::Base, 0, 0, k};
}

JetCoordinate JetCoordinate::metric(int i, int j) {
  check_index(i);
  check_index(j);
  if (i > j) std::swap(i, j);
  return {CoordKind::Metric, i, j, 0};
}

JetCoordinate JetCoordinate::metric_jet(int i, int j, int k) {
  check_index(i);
  check_index(j);
  check_index(k);
  if (i > j) std::swap(i, j);
  return {CoordKind::MetricJet, i, j, k};
}

JetCoordinate JetCoordinate::from_slot(int slot) {
  static const auto table = [] {
    std::array<std::pair<int, int>, 10> pairs{};
    for (int i = 0; i < kMaxDimension; ++i)
      for (int j = i; j < kMaxDimension; ++j) pairs[pair_index(i, j)] = {i, j};
    return pairs;
  }();
  if (slot < 0 || slot >= kSlotCount) throw std::out_of_range("slot out of range");
  if (slot < kMaxDimension) return base(slot);
  if (slot < kMaxDimension + 10) {
    auto [i, j] = table[slot - kMaxDimension];
    return metric(i, j);
  }
  const int rel = slot - kMaxDimension - 10;
  auto [i, j] = table[rel / kMaxDimension];
  return metric_jet(i, j, rel % kMaxDimension);
}

int JetCoordinate::slot() const {
  switch (kind_) {
    case CoordKind::Base: return base_slot(k_);
    case CoordKind::Metric: return metric_slot(i_, j_);
    case CoordKind::MetricJet: return metric_jet_slot(i_, j_, k_);
  }
  return -1;
}

bool JetCoordinate::active_in(int n) const {
  switch (kind_) {
    case CoordKind::Base: return k_ < n;
    case CoordKind::Metric: return j_ < n;
    case CoordKind::MetricJet: return j_ < n && k_ < n;
  }
  return false;
}

std::string JetCoordinate::name() const {
  switch (kind_) {
    case CoordKind::Base: return "x" + std::to_string(k_ + 1);
    case CoordKind::Metric: return "y" + std::to_string(i_ + 1) + std::to_string(j_ + 1);
    case CoordKind::MetricJet:
      return "y" + std::to_string(i_ + 1) + std::to_string(j_ + 1) + "," + std::to_string(k_ + 1);
  }
  return {};
}

JetCoordinate JetCoordinate::parse(const std::string& name) {
  auto digit = [&](char c) {
    if (c < '1' || c > '0' + kMaxDimension) throw ParseError("bad coordinate name '" + name + "'");
    return c - '1';
  };
  if (name.size() == 2 && name[0] == 'x') return base(digit(name[1]));
  if (name.size() == 3 && name[0] == 'y') return metric(digit(name[1]), digit(name[2]));
  if (name.size() == 5 && name[0] == 'y' && name[3] == ',')
    return metric_jet(digit(name[1]), digit(name[2]), digit(name[4]));
  throw ParseError("bad coordinate name '" + name + "'");
}

int coordinate_count(int n) { return n + n * (n + 1) / 2 + n * n * (n + 1) / 2; }

const std::vector<int>& active_slots(int n) {
  static const auto tables = [] {
    std::array<std::vector<int>, kMaxDimension + 1> t;
    for (int d = 1; d <= kMaxDimension; ++d)
      for (int s = 0; s < kSlotCount; ++s)
        if (JetCoordinate::from_slot(s).active_in(d)) t[d].push_back(s);
    return t;
  }();
  if (n < 1 || n > kMaxDimension) throw UnsupportedDimension(n);
  return tables[n];
}

SlotMask active_mask(int n) {
  SlotMask m = 0;
  for (int s : active_slots(n)) m |= SlotMask{1} << s;
  return m;
}

int dimension_for_mask(SlotMask mask) {
  for (int n = 2; n <= kMaxDimension; ++n)
    if ((mask & ~active_mask(n)) == 0) return n;
  return kMaxDimension;
}

}  // namespace jetlc
