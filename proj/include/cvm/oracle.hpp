#pragma once

// Brute-force configuration counter used to check count_configs.
//
// Works from physical coordinates rather than the lattice's row/column
// helpers: a unit at (r, c) sits at height r and doubled abscissa
// 2c + (r mod 2). Nearest contacts are displacements (+-1, +-1), next-nearest
// are (0, +-2) and (+-2, 0), and a triplet is any two-step path of nearest
// contacts whose net displacement is a next-nearest one. Every ordered
// incidence is found by scanning all cells, then the double counting is
// divided out.

#include <array>
#include <cstdint>
#include <vector>

#include "cvm/configuration.hpp"
#include "cvm/errors.hpp"
#include "cvm/lattice.hpp"

namespace cvm::oracle {

inline constexpr std::size_t kMaxUnits = 4096;

namespace detail {

struct Offset {
    long dr;
    long dx;
};

inline constexpr std::array<Offset, 4> kNearest{{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};
inline constexpr std::array<Offset, 4> kNextNearest{{{0, 2}, {0, -2}, {2, 0}, {-2, 0}}};

struct Site {
    long row;
    long x;  // doubled abscissa
    State state;
};

inline long mod(long v, long n) {
    const long r = v % n;
    return r < 0 ? r + n : r;
}

}  // namespace detail

inline ConfigCounts brute_force_count(const Grid& g, TripletMode mode = TripletMode::horizontal) {
    using namespace detail;
    if (g.size() > kMaxUnits) throw InvalidArgument("brute-force oracle is limited to 4096 units");

    const long rows = static_cast<long>(g.rows());
    const long width = 2 * static_cast<long>(g.cols());
    std::vector<Site> sites;
    for (long r = 0; r < rows; ++r)
        for (long c = 0; c < static_cast<long>(g.cols()); ++c)
            sites.push_back({r, 2 * c + (r % 2), g.at(std::size_t(r), std::size_t(c))});

    const auto reaches = [&](const Site& from, Offset o, const Site& to) {
        return mod(from.row + o.dr, rows) == to.row && mod(from.x + o.dx, width) == to.x;
    };
    const auto is_pair_class = [](State a, State b) -> std::size_t {
        if (a == State::A && b == State::A) return 0;
        if (a == State::B && b == State::B) return 2;
        return 1;
    };

    ConfigCounts c;
    std::array<std::int64_t, 3> y2{};
    std::array<std::int64_t, 3> w2{};
    std::array<std::int64_t, 6> z2{};
    std::int64_t pair_slots2 = 0;
    std::int64_t triplet_slots2 = 0;

    for (const Site& u : sites) {
        ++c.x[u.state == State::A ? 0 : 1];
        for (const Site& v : sites) {
            for (Offset o : kNearest)
                if (reaches(u, o, v)) ++y2[is_pair_class(u.state, v.state)];
            for (Offset o : kNextNearest)
                if (reaches(u, o, v)) ++w2[is_pair_class(u.state, v.state)];
        }
    }

    for (const Site& u : sites) {
        for (const Site& apex : sites) {
            for (Offset first : kNearest) {
                if (!reaches(u, first, apex)) continue;
                for (const Site& v : sites) {
                    for (Offset second : kNearest) {
                        if (!reaches(apex, second, v)) continue;
                        const long dr = first.dr + second.dr;
                        const long dx = first.dx + second.dx;
                        const bool horizontal = dr == 0 && (dx == 2 || dx == -2);
                        const bool vertical = (dr == 2 || dr == -2) && dx == 0;
                        if (!horizontal && !(vertical && mode == TripletMode::full)) continue;

                        const int ends = (u.state == State::A) + (v.state == State::A);
                        std::size_t k;
                        if (apex.state == State::A)
                            k = ends == 2 ? 0 : ends == 1 ? 1 : 3;
                        else
                            k = ends == 2 ? 2 : ends == 1 ? 4 : 5;
                        ++z2[k];
                        ++triplet_slots2;
                    }
                }
            }
        }
    }

    for (std::size_t i = 0; i < 3; ++i) {
        c.y[i] = y2[i] / 2;
        c.w[i] = w2[i] / 2;
        pair_slots2 += y2[i];
    }
    for (std::size_t i = 0; i < 6; ++i) c.z[i] = z2[i] / 2;
    c.pair_total = pair_slots2 / 2;
    c.triplet_total = triplet_slots2 / 2;
    return c;
}

}  // namespace cvm::oracle
