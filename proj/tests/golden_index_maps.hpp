#pragma once

// Hand-transcribed index-map tables for small sizes of each ensemble, used
// as goldens by both the unit tests and the acceptance suite. Entry {k, m}
// at row i, column j (1-based) says cell (i, j) reads coordinate m of
// diagonal vector k.

#include <array>
#include <utility>

namespace golden {

using KM = std::pair<int, int>;

// symmetric circulant, n = 4
inline constexpr std::array<std::array<KM, 4>, 4> kSymCirc4 = {{
    {{{0, 1}, {1, 1}, {2, 1}, {1, 4}}},
    {{{1, 1}, {0, 2}, {1, 2}, {2, 2}}},
    {{{2, 1}, {1, 2}, {0, 3}, {1, 3}}},
    {{{1, 4}, {2, 2}, {1, 3}, {0, 4}}},
}};

// symmetric circulant, n = 5
inline constexpr std::array<std::array<KM, 5>, 5> kSymCirc5 = {{
    {{{0, 1}, {1, 1}, {2, 1}, {2, 4}, {1, 5}}},
    {{{1, 1}, {0, 2}, {1, 2}, {2, 2}, {2, 5}}},
    {{{2, 1}, {1, 2}, {0, 3}, {1, 3}, {2, 3}}},
    {{{2, 4}, {2, 2}, {1, 3}, {0, 4}, {1, 4}}},
    {{{1, 5}, {2, 5}, {2, 3}, {1, 4}, {0, 5}}},
}};

// circulant, n = 3
inline constexpr std::array<std::array<KM, 3>, 3> kCirculant3 = {{
    {{{1, 1}, {2, 1}, {3, 1}}},
    {{{3, 2}, {1, 2}, {2, 2}}},
    {{{2, 3}, {3, 3}, {1, 3}}},
}};

// reverse circulant, n = 3
inline constexpr std::array<std::array<KM, 3>, 3> kReverseCirculant3 = {{
    {{{1, 1}, {2, 1}, {3, 1}}},
    {{{2, 2}, {3, 2}, {1, 2}}},
    {{{3, 3}, {1, 3}, {2, 3}}},
}};

// hankel, n = 3
inline constexpr std::array<std::array<KM, 3>, 3> kHankel3 = {{
    {{{1, 1}, {2, 1}, {3, 1}}},
    {{{2, 2}, {3, 2}, {4, 1}}},
    {{{3, 3}, {4, 2}, {5, 1}}},
}};

// symmetric toeplitz, n = 5
inline constexpr std::array<std::array<KM, 5>, 5> kToeplitz5 = {{
    {{{0, 1}, {1, 1}, {2, 1}, {3, 1}, {4, 1}}},
    {{{1, 1}, {0, 2}, {1, 2}, {2, 2}, {3, 2}}},
    {{{2, 1}, {1, 2}, {0, 3}, {1, 3}, {2, 3}}},
    {{{3, 1}, {2, 2}, {1, 3}, {0, 4}, {1, 4}}},
    {{{4, 1}, {3, 2}, {2, 3}, {1, 4}, {0, 5}}},
}};

}  // namespace golden
