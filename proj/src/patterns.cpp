#include "rmt/patterns.hpp"

#include "rmt/errors.hpp"

namespace rmt {
namespace {

// ((x - 1) mod n) + 1: wraps any integer into 1..n.
int wrap1(int x, int n) {
  int r = (x - 1) % n;
  if (r < 0) r += n;
  return r + 1;
}

void check_size(int n) {
  if (n < 1) fail(errc::bad_size, "matrix size must be >= 1, got " + std::to_string(n));
}

void check_cell(int n, int i, int j) {
  if (i < 1 || i > n || j < 1 || j > n)
    fail(errc::bad_index, "cell (" + std::to_string(i) + "," + std::to_string(j) +
                              ") out of range for n=" + std::to_string(n));
}

}  // namespace

std::string to_string(PatternKind kind) {
  switch (kind) {
    case PatternKind::symmetric_toeplitz: return "toeplitz";
    case PatternKind::circulant: return "circulant";
    case PatternKind::reverse_circulant: return "reverse_circulant";
    case PatternKind::symmetric_circulant: return "symmetric_circulant";
    case PatternKind::hankel: return "hankel";
  }
  return "?";
}

PatternKind pattern_from_string(const std::string& name) {
  if (name == "toeplitz") return PatternKind::symmetric_toeplitz;
  if (name == "circulant") return PatternKind::circulant;
  if (name == "reverse_circulant") return PatternKind::reverse_circulant;
  if (name == "symmetric_circulant") return PatternKind::symmetric_circulant;
  if (name == "hankel") return PatternKind::hankel;
  fail(errc::bad_parameter, "unknown pattern kind '" + name + "'");
}

bool is_symmetric_kind(PatternKind kind) {
  return kind == PatternKind::symmetric_toeplitz ||
         kind == PatternKind::symmetric_circulant;
}

DiagonalLayout diagonal_layout(PatternKind kind, int n) {
  check_size(n);
  DiagonalLayout layout;
  switch (kind) {
    case PatternKind::symmetric_toeplitz:
      // diagonals 0..n-1, diagonal k has n-k cells above the main diagonal
      for (int k = 0; k < n; ++k) layout.vectors.push_back({k, n - k});
      break;
    case PatternKind::circulant:
    case PatternKind::reverse_circulant:
      for (int k = 1; k <= n; ++k) layout.vectors.push_back({k, n});
      break;
    case PatternKind::symmetric_circulant:
      if (n % 2 == 1) {
        for (int k = 0; k <= (n - 1) / 2; ++k) layout.vectors.push_back({k, n});
      } else {
        for (int k = 0; k < n / 2; ++k) layout.vectors.push_back({k, n});
        // the antipodal diagonal |i-j| = n/2 is hit twice per coordinate
        layout.vectors.push_back({n / 2, n / 2});
      }
      break;
    case PatternKind::hankel:
      for (int k = 1; k <= n; ++k) layout.vectors.push_back({k, k});
      for (int k = n + 1; k <= 2 * n - 1; ++k) layout.vectors.push_back({k, 2 * n - k});
      break;
  }
  return layout;
}

EntryAddress entry_index(PatternKind kind, int n, int i, int j) {
  check_size(n);
  check_cell(n, i, j);
  switch (kind) {
    case PatternKind::symmetric_toeplitz:
      return {i > j ? i - j : j - i, i < j ? i : j};
    case PatternKind::circulant:
      return {wrap1(j - i + 1, n), i};
    case PatternKind::reverse_circulant:
      return {wrap1(i + j - 1, n), i};
    case PatternKind::hankel: {
      const int s = i + j - 1;
      return s <= n ? EntryAddress{s, i} : EntryAddress{s, n - j + 1};
    }
    case PatternKind::symmetric_circulant: {
      int d = (j - i) % n;
      if (d < 0) d += n;
      const int k = d < n - d ? d : n - d;
      if (d < n - d) return {k, i};
      if (d > n - d) return {k, j};
      // d == n - d only for even n; both cells of the pair use min(i, j),
      // which already lies in 1..n/2
      return {k, i < j ? i : j};
    }
  }
  fail(errc::bad_parameter, "unhandled pattern kind");
}

std::vector<std::pair<int, int>> positions_of(PatternKind kind, int n,
                                              EntryAddress addr) {
  check_size(n);
  const DiagonalLayout layout = diagonal_layout(kind, n);
  const int slot = layout.index_of(addr.k);
  if (slot < 0)
    fail(errc::bad_address, "no vector with id " + std::to_string(addr.k));
  const int dim = layout.vectors[slot].dim;
  if (addr.m < 1 || addr.m > dim)
    fail(errc::bad_address, "coordinate " + std::to_string(addr.m) +
                                " out of range 1.." + std::to_string(dim));

  const int k = addr.k;
  const int m = addr.m;
  std::vector<std::pair<int, int>> cells;
  switch (kind) {
    case PatternKind::symmetric_toeplitz:
      if (k == 0) {
        cells.push_back({m, m});
      } else {
        cells.push_back({m, m + k});
        cells.push_back({m + k, m});
      }
      break;
    case PatternKind::circulant:
      cells.push_back({m, wrap1(m + k - 1, n)});
      break;
    case PatternKind::reverse_circulant:
      cells.push_back({m, wrap1(k - m + 1, n)});
      break;
    case PatternKind::hankel:
      if (k <= n) {
        cells.push_back({m, k - m + 1});
      } else {
        cells.push_back({m + k - n, n + 1 - m});
      }
      break;
    case PatternKind::symmetric_circulant:
      if (k == 0) {
        cells.push_back({m, m});
      } else if (2 * k == n) {
        cells.push_back({m, m + k});
        cells.push_back({m + k, m});
      } else {
        const int other = wrap1(m + k, n);
        if (m < other) {
          cells.push_back({m, other});
          cells.push_back({other, m});
        } else {
          cells.push_back({other, m});
          cells.push_back({m, other});
        }
      }
      break;
  }
  return cells;
}

}  // namespace rmt
