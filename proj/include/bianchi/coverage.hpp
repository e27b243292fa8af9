#pragma once

// Grid certificate that a family of discs covers the fundamental domain
// D = {u + v*w : 0 <= u, v < 1} of C/O_d, and an SVG rendering of it.

#include "bianchi/geometry.hpp"
#include "bianchi/ring.hpp"

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace bianchi {

struct FundamentalDomain {
    RingParams params;
};

// [i/n, (i+1)/n] + [j/n, (j+1)/n] w.
struct GridCell {
    long i = 0;
    long j = 0;

    bool operator==(const GridCell&) const = default;
};

// The circle (by index into the caller's list) and the lattice shift
// u + v*w that was applied to it.
struct CoverWitness {
    long circle = -1;
    long shift_u = 0;
    long shift_v = 0;
};

struct CoverResult {
    bool covered = false;
    long n = 0;
    std::vector<GridCell> uncovered_cells;
    std::vector<CoverWitness> witness;  // row-major by (j, i); circle = -1 if none

    const CoverWitness& witness_at(const GridCell& cell) const {
        return witness[static_cast<std::size_t>(cell.j * n + cell.i)];
    }
};

// Exact containment of a grid cell in a closed disc, by testing the four
// corners (cell and disc are both convex).
bool cell_in_circle(const RingParams& p, const GridCell& cell, long n, const Circle& circle);

// Exact membership of u + v*w in the closed disc.
bool point_in_circle(const RingParams& p, const Rational& u, const Rational& v, const Circle& circle);

// Circle translated by the lattice vector su + sv*w.
Circle shift_circle(const Circle& circle, long su, long sv);

// Lattice shifts (su, sv) of `circle` whose translate can meet D.
std::vector<std::pair<long, long>> relevant_shifts(const RingParams& p, const Circle& circle);

// Certifies D is covered by the circles and all their O_d-translates using an
// n x n grid. A failure may be a false negative.
CoverResult check_cover(const RingParams& p, const std::vector<Circle>& circles, long n,
                        unsigned workers = 1);

// check_cover at n, 2n, 4n, ... while the resolution stays <= max_n.
CoverResult certify_cover(const RingParams& p, const std::vector<Circle>& circles, long n,
                          long max_n, unsigned workers = 1);

// Pixel mapping used by render_figure. The real axis is horizontal, the
// imaginary axis points up; D is fitted into a square of `extent` pixels
// with `margin` pixels on every side.
class SvgFrame {
public:
    explicit SvgFrame(const RingParams& p, double extent = 700.0, double margin = 50.0);

    std::pair<double, double> to_pixel(double x, double y) const;
    std::pair<double, double> from_pixel(double px, double py) const;
    // Complex coordinates (x, y) of u + v*w.
    std::pair<double, double> to_complex(double u, double v) const;
    double scale() const { return scale_; }
    double width() const { return width_; }
    double height() const { return height_; }

private:
    double re_omega_, im_omega_;
    double xmin_, ymax_;
    double scale_, margin_;
    double width_, height_;
};

std::string render_svg(const RingParams& p, const std::vector<Circle>& circles,
                       const CoverResult& grid);

// Writes render_svg to `path`; throws std::runtime_error on I/O failure.
void render_figure(const RingParams& p, const std::vector<Circle>& circles,
                   const CoverResult& grid, const std::filesystem::path& path);

}  // namespace bianchi
