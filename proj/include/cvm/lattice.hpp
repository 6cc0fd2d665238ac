#pragma once

// Wrapped staggered grid of bistate units.
//
// Layout: cells are stored row-major. Odd-index rows sit half a cell to the
// right of even-index rows, so every unit touches two units in the row above
// and two in the row below (its nearest neighbors). Next-nearest neighbors are
// the two same-row horizontal contacts and the two same-column contacts two
// rows away. A triplet is a two-step zigzag path whose ends are a
// next-nearest pair and whose apex is a nearest neighbor of both ends.
// All index arithmetic wraps (toroidal envelope); the row count must be even
// so the stagger is consistent across the vertical seam.

#include <array>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "cvm/errors.hpp"
#include "cvm/rng.hpp"

namespace cvm {

enum class State : std::uint8_t { B = 0, A = 1 };

constexpr State opposite(State s) noexcept { return s == State::A ? State::B : State::A; }

struct Position {
    std::size_t row = 0;
    std::size_t col = 0;
    friend bool operator==(const Position&, const Position&) = default;
};

/// Grid dimensions. Construction enforces rows >= 4 and even, cols >= 4.
class Dims {
public:
    Dims(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
        if (rows < 4 || cols < 4)
            throw InvalidGeometry("grid must be at least 4x4, got " + std::to_string(rows) +
                                  "x" + std::to_string(cols));
        if (rows % 2 != 0)
            throw InvalidGeometry("row count must be even for the staggered wrap, got " +
                                  std::to_string(rows));
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return rows_ * cols_; }

    std::size_t index(Position p) const noexcept { return p.row * cols_ + p.col; }
    Position position(std::size_t idx) const noexcept { return {idx / cols_, idx % cols_}; }

    /// (row + dr, col + dc) with both coordinates wrapped.
    Position offset(Position p, std::ptrdiff_t dr, std::ptrdiff_t dc) const noexcept {
        return {wrap(p.row, dr, rows_), wrap(p.col, dc, cols_)};
    }

    friend bool operator==(const Dims&, const Dims&) = default;

private:
    static std::size_t wrap(std::size_t v, std::ptrdiff_t d, std::size_t n) noexcept {
        const auto sn = static_cast<std::ptrdiff_t>(n);
        auto r = (static_cast<std::ptrdiff_t>(v) + d) % sn;
        if (r < 0) r += sn;
        return static_cast<std::size_t>(r);
    }

    std::size_t rows_;
    std::size_t cols_;
};

struct Triplet {
    Position first;
    Position apex;
    Position last;
};

namespace geometry {

/// Column offsets of the two diagonal contacts in an adjacent row.
/// Even rows reach (c-1, c); odd rows reach (c, c+1).
inline std::array<std::ptrdiff_t, 2> diagonal_columns(std::size_t row) noexcept {
    if (row % 2 == 0) return {-1, 0};
    return {0, 1};
}

/// The 4 diagonal contacts: two in row r-1, two in row r+1.
inline std::array<Position, 4> nearest_neighbors(const Dims& d, Position p) {
    const auto dc = diagonal_columns(p.row);
    return {d.offset(p, -1, dc[0]), d.offset(p, -1, dc[1]), d.offset(p, 1, dc[0]),
            d.offset(p, 1, dc[1])};
}

/// Same-row contacts (c-1, c+1) then same-column contacts (r-2, r+2).
/// On a 4-row grid the two vertical contacts coincide; both slots are kept.
inline std::array<Position, 4> next_nearest_neighbors(const Dims& d, Position p) {
    return {d.offset(p, 0, -1), d.offset(p, 0, 1), d.offset(p, -2, 0), d.offset(p, 2, 0)};
}

/// The two horizontal zigzags whose left end is p: (r,c) -> apex -> (r,c+1),
/// apex in row r+1 first, then in row r-1.
inline std::array<Triplet, 2> horizontal_triplets_from(const Dims& d, Position p) {
    const Position right = d.offset(p, 0, 1);
    const std::ptrdiff_t apex_col = diagonal_columns(p.row)[1];
    return {Triplet{p, d.offset(p, 1, apex_col), right},
            Triplet{p, d.offset(p, -1, apex_col), right}};
}

/// The two vertical zigzags whose upper end is p: (r,c) -> apex in row r+1 -> (r+2,c).
inline std::array<Triplet, 2> vertical_triplets_from(const Dims& d, Position p) {
    const Position below = d.offset(p, 2, 0);
    const auto dc = diagonal_columns(p.row);
    return {Triplet{p, d.offset(p, 1, dc[0]), below}, Triplet{p, d.offset(p, 1, dc[1]), below}};
}

}  // namespace geometry

class Grid {
public:
    Grid(std::size_t rows, std::size_t cols, std::vector<State> cells)
        : dims_(rows, cols), cells_(std::move(cells)) {
        if (cells_.size() != dims_.size())
            throw InvalidGeometry("expected " + std::to_string(dims_.size()) + " cells, got " +
                                  std::to_string(cells_.size()));
    }

    static Grid filled(std::size_t rows, std::size_t cols, State s) {
        return Grid(rows, cols, std::vector<State>(rows * cols, s));
    }

    const Dims& dims() const noexcept { return dims_; }
    std::size_t rows() const noexcept { return dims_.rows(); }
    std::size_t cols() const noexcept { return dims_.cols(); }
    std::size_t size() const noexcept { return cells_.size(); }

    State at(Position p) const { return cells_.at(checked_index(p)); }
    State at(std::size_t row, std::size_t col) const { return at(Position{row, col}); }
    State operator[](std::size_t idx) const noexcept { return cells_[idx]; }
    std::span<const State> cells() const noexcept { return cells_; }

    std::size_t count(State s) const noexcept {
        std::size_t n = 0;
        for (State c : cells_) n += (c == s);
        return n;
    }

    double active_fraction() const noexcept {
        return static_cast<double>(count(State::A)) / static_cast<double>(size());
    }

    void set(Position p, State s) { cells_[checked_index(p)] = s; }

    void flip(Position p) {
        auto& cell = cells_[checked_index(p)];
        cell = opposite(cell);
    }
    void flip(std::size_t row, std::size_t col) { flip(Position{row, col}); }

    /// Exchange an A unit at `a` with a B unit at `b`. A-count is preserved.
    void swap_pair(Position a, Position b) {
        const auto ia = checked_index(a);
        const auto ib = checked_index(b);
        if (cells_[ia] != State::A || cells_[ib] != State::B)
            throw InvalidSwap("swap requires an A unit and a B unit");
        cells_[ia] = State::B;
        cells_[ib] = State::A;
    }

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    std::size_t checked_index(Position p) const {
        if (p.row >= rows() || p.col >= cols())
            throw InvalidArgument("position (" + std::to_string(p.row) + ", " +
                                  std::to_string(p.col) + ") outside " + std::to_string(rows()) +
                                  "x" + std::to_string(cols()) + " grid");
        return dims_.index(p);
    }

    Dims dims_;
    std::vector<State> cells_;
};

/// Each cell independently A with probability p_active.
inline Grid generate_random(std::size_t rows, std::size_t cols, double p_active, Rng& rng) {
    if (!(p_active >= 0.0 && p_active <= 1.0))
        throw InvalidArgument("activation probability must be in [0, 1]");
    const Dims dims(rows, cols);
    std::vector<State> cells(dims.size());
    for (auto& c : cells) c = rng.bernoulli(p_active) ? State::A : State::B;
    return Grid(rows, cols, std::move(cells));
}

// Grid file format:
//   # optional comment lines
//   <rows> <cols>
//   <rows lines of exactly cols characters from {0,1}; '1' = A>
// LF newlines.

inline void save_grid(const Grid& g, std::ostream& out) {
    out << g.rows() << ' ' << g.cols() << '\n';
    for (std::size_t r = 0; r < g.rows(); ++r) {
        std::string line(g.cols(), '0');
        for (std::size_t c = 0; c < g.cols(); ++c)
            if (g.at(r, c) == State::A) line[c] = '1';
        out << line << '\n';
    }
}

namespace detail {

inline bool parse_count(const std::string& s, std::size_t& out) {
    if (s.empty() || s.size() > 9) return false;
    std::size_t v = 0;
    for (char ch : s) {
        if (ch < '0' || ch > '9') return false;
        v = v * 10 + static_cast<std::size_t>(ch - '0');
    }
    out = v;
    return true;
}

}  // namespace detail

inline Grid load_grid(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    std::size_t rows = 0;
    std::size_t cols = 0;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line[0] == '#') continue;
        const auto sp = line.find(' ');
        if (sp == std::string::npos || line.find(' ', sp + 1) != std::string::npos ||
            !detail::parse_count(line.substr(0, sp), rows) ||
            !detail::parse_count(line.substr(sp + 1), cols))
            throw ParseError("malformed header, expected '<rows> <cols>'", line_no);
        have_header = true;
        break;
    }
    if (!have_header) throw ParseError("missing header", line_no);

    std::vector<State> cells;
    cells.reserve(rows * cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!std::getline(in, line))
            throw ParseError("expected " + std::to_string(rows) + " rows, got " + std::to_string(r),
                             line_no);
        ++line_no;
        if (line.size() != cols)
            throw ParseError("ragged row: expected " + std::to_string(cols) + " characters, got " +
                                 std::to_string(line.size()),
                             line_no);
        for (char ch : line) {
            if (ch == '1')
                cells.push_back(State::A);
            else if (ch == '0')
                cells.push_back(State::B);
            else
                throw ParseError(std::string("illegal character '") + ch + "'", line_no);
        }
    }
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty()) throw ParseError("trailing data after grid body", line_no);
    }
    return Grid(rows, cols, std::move(cells));
}

}  // namespace cvm
