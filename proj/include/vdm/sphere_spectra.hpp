#pragma once

#include <string>
#include <vector>

namespace vdm {

/// Golden eigenvalue/multiplicity data for 1-forms over S^d. Entries are
/// sorted by eigenvalue; families sharing an eigenvalue are merged.
struct SphereSpectrumTable {
  struct Entry {
    double eigenvalue;
    long multiplicity;
    std::string family; // weight label(s), e.g. "kL1" or "kL1+L2,kL1-L2"
  };
  int d = 0;
  std::vector<Entry> entries;

  std::vector<long> multiplicities() const;
};

/// Eigenvalue k(k+1), multiplicity 2(2k+1) for k = 1..kmax.
SphereSpectrumTable s2_table(int kmax);

/// Three weight families of S^3 — kL1: (k(k+2), (k+1)^2) and kL1 +/- L2:
/// ((k+1)^2, k(k+2)) each — merged at equal eigenvalues.
SphereSpectrumTable s3_table(int kmax);

/// Leading eigenspace multiplicities of the connection Laplacian over S^d,
/// 2 <= d <= 6, after merging weight families with equal eigenvalue. For
/// d = 2, 3 any count is available from the closed-form tables; for d = 4..6
/// only the tabulated leading three entries exist.
std::vector<long> predicted_multiplicities(int d, int count);

} // namespace vdm
