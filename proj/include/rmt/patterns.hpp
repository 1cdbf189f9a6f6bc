#pragma once

#include <string>
#include <utility>
#include <vector>

namespace rmt {

/// The five patterned ensembles. Each n x n matrix is driven by a family of
/// independent "diagonal vectors"; the pattern fixes which vector and which
/// coordinate feeds each cell.
enum class PatternKind {
  symmetric_toeplitz,
  circulant,
  reverse_circulant,
  symmetric_circulant,
  hankel,
};

std::string to_string(PatternKind kind);
PatternKind pattern_from_string(const std::string& name);

/// True for the two kinds whose samples are exactly symmetric matrices.
bool is_symmetric_kind(PatternKind kind);

struct VectorInfo {
  int k;    // vector id, as used by the pattern's indexing convention
  int dim;  // number of coordinates
};

/// The list of diagonal vectors for (kind, n). Vector ids are not required
/// to start at 0 or be contiguous; use `index_of` to map id -> slot.
struct DiagonalLayout {
  std::vector<VectorInfo> vectors;

  int total_coords() const {
    int total = 0;
    for (const auto& v : vectors) total += v.dim;
    return total;
  }

  /// Slot of vector id k, or -1 if absent.
  int index_of(int k) const {
    for (int s = 0; s < int(vectors.size()); ++s)
      if (vectors[s].k == k) return s;
    return -1;
  }
};

/// Cell -> (vector id, 1-based coordinate).
struct EntryAddress {
  int k;
  int m;

  bool operator==(const EntryAddress& other) const {
    return k == other.k && m == other.m;
  }
};

DiagonalLayout diagonal_layout(PatternKind kind, int n);

/// Address of cell (i, j), 1-based, 1 <= i, j <= n.
EntryAddress entry_index(PatternKind kind, int n, int i, int j);

/// All cells mapping to `addr`; 1 cell for the non-symmetric kinds, 1 or 2
/// for the symmetric ones. Cells are listed with i <= j first.
std::vector<std::pair<int, int>> positions_of(PatternKind kind, int n,
                                              EntryAddress addr);

}  // namespace rmt
