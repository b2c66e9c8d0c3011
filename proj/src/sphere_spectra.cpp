#include "vdm/sphere_spectra.hpp"

#include <algorithm>
#include <map>

#include "vdm/errors.hpp"

namespace vdm {

std::vector<long> SphereSpectrumTable::multiplicities() const {
  std::vector<long> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.multiplicity);
  return out;
}

SphereSpectrumTable s2_table(int kmax) {
  if (kmax < 1) throw DataError("s2_table: kmax must be >= 1");
  SphereSpectrumTable table;
  table.d = 2;
  for (long k = 1; k <= kmax; ++k)
    table.entries.push_back({static_cast<double>(k * (k + 1)), 2 * (2 * k + 1), "kL1"});
  return table;
}

SphereSpectrumTable s3_table(int kmax) {
  if (kmax < 1) throw DataError("s3_table: kmax must be >= 1");
  // eigenvalue -> (multiplicity, labels)
  std::map<long, std::pair<long, std::string>> merged;
  auto add = [&merged](long eig, long mult, const std::string& label) {
    auto [it, fresh] = merged.insert({eig, {mult, label}});
    if (!fresh) {
      it->second.first += mult;
      it->second.second += "," + label;
    }
  };
  for (long k = 1; k <= kmax; ++k) {
    add(k * (k + 2), (k + 1) * (k + 1), "kL1");
    add((k + 1) * (k + 1), k * (k + 2), "kL1+L2");
    add((k + 1) * (k + 1), k * (k + 2), "kL1-L2");
  }
  SphereSpectrumTable table;
  table.d = 3;
  for (const auto& [eig, data] : merged)
    table.entries.push_back({static_cast<double>(eig), data.first, data.second});
  return table;
}

std::vector<long> predicted_multiplicities(int d, int count) {
  if (d < 2 || d > 6)
    throw DataError("predicted_multiplicities: d must lie in [2,6]");
  if (count < 1)
    throw DataError("predicted_multiplicities: count must be >= 1");

  if (d == 2) {
    auto mults = s2_table(count).multiplicities();
    mults.resize(count);
    return mults;
  }
  if (d == 3) {
    // kmax = count is always enough: each k contributes two merged entries.
    auto mults = s3_table(count).multiplicities();
    mults.resize(count);
    return mults;
  }

  static const std::map<int, std::vector<long>> leading = {
      {4, {5, 10, 14}},
      {5, {6, 15, 20}},
      {6, {7, 21, 27}},
  };
  const auto& list = leading.at(d);
  if (count > static_cast<int>(list.size()))
    throw DataError(
        "predicted_multiplicities: only the leading " +
        std::to_string(list.size()) + " multiplicities are tabulated for d = " +
        std::to_string(d));
  return {list.begin(), list.begin() + count};
}

} // namespace vdm
