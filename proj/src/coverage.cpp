#include "bianchi/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace bianchi {

namespace {

// A disc with center (CU, CV)/L and radius^2 = P/Q, prepared for testing the
// grid points (i/n, j/n): the point lies in the disc iff
//   (X^2 + tXY + nY^2) * Q <= P * n^2 * L^2,  X = i*L - CU*n, Y = j*L - CV*n.
struct ScaledDisc {
    Integer cu_n, cv_n, L, Q, rhs;
    long t, nn;

    ScaledDisc(const RingParams& p, const Circle& c, long grid) : t(p.t), nn(p.n) {
        mpz_lcm(L.get_mpz_t(), c.center.u.get_den_mpz_t(), c.center.v.get_den_mpz_t());
        Integer cu = c.center.u.get_num() * (L / c.center.u.get_den());
        Integer cv = c.center.v.get_num() * (L / c.center.v.get_den());
        cu_n = cu * grid;
        cv_n = cv * grid;
        Q = c.radius_sq.get_den();
        rhs = c.radius_sq.get_num() * grid * grid * L * L;
    }

    bool contains(long i, long j) const {
        Integer X = i * L - cu_n;
        Integer Y = j * L - cv_n;
        Integer lhs = X * X + t * X * Y + nn * Y * Y;
        lhs *= Q;
        return lhs <= rhs;
    }

    bool contains_cell(long i, long j) const {
        return contains(i, j) && contains(i + 1, j) && contains(i, j + 1) && contains(i + 1, j + 1);
    }
};

// Half-extents of the disc in (u, v) coordinates.
std::pair<double, double> uv_extent(const RingParams& p, const Circle& c) {
    double r2 = c.radius_sq.get_d();
    double disc = 4.0 * p.n - p.t * p.t;
    double dv = std::sqrt(4.0 * r2 / disc);
    double du = std::sqrt(4.0 * p.n * r2 / disc);
    return {du, dv};
}

struct Job {
    long circle;
    long su, sv;
    Circle shifted;
};

}  // namespace

bool point_in_circle(const RingParams& p, const Rational& u, const Rational& v, const Circle& circle) {
    Rational du = u - circle.center.u;
    Rational dv = v - circle.center.v;
    return norm_of_coords(p, du, dv) <= circle.radius_sq;
}

bool cell_in_circle(const RingParams& p, const GridCell& cell, long n, const Circle& circle) {
    return ScaledDisc(p, circle, n).contains_cell(cell.i, cell.j);
}

Circle shift_circle(const Circle& circle, long su, long sv) {
    Circle out = circle;
    out.center.u += su;
    out.center.v += sv;
    return out;
}

std::vector<std::pair<long, long>> relevant_shifts(const RingParams& p, const Circle& circle) {
    auto [du, dv] = uv_extent(p, circle);
    double cu = circle.center.u.get_d();
    double cv = circle.center.v.get_d();
    // Translate so the disc's bounding box meets [0, 1]^2; one extra unit of slack.
    long ulo = static_cast<long>(std::floor(-cu - du)) - 1;
    long uhi = static_cast<long>(std::ceil(1 - cu + du)) + 1;
    long vlo = static_cast<long>(std::floor(-cv - dv)) - 1;
    long vhi = static_cast<long>(std::ceil(1 - cv + dv)) + 1;
    std::vector<std::pair<long, long>> out;
    for (long sv = vlo; sv <= vhi; ++sv)
        for (long su = ulo; su <= uhi; ++su) out.emplace_back(su, sv);
    return out;
}

CoverResult check_cover(const RingParams& p, const std::vector<Circle>& circles, long n,
                        unsigned workers) {
    if (n < 1) throw std::invalid_argument("grid resolution must be >= 1");
    CoverResult result;
    result.n = n;
    result.witness.assign(static_cast<std::size_t>(n * n), CoverWitness{});

    std::vector<Job> jobs;
    for (std::size_t k = 0; k < circles.size(); ++k)
        for (auto [su, sv] : relevant_shifts(p, circles[k]))
            jobs.push_back({static_cast<long>(k), su, sv, shift_circle(circles[k], su, sv)});

    // Workers own disjoint bands of rows; within a band circles are tried in
    // order, so the witness is the first circle that contains the cell.
    auto run_band = [&](long jlo, long jhi) {
        for (const auto& job : jobs) {
            auto [du, dv] = uv_extent(p, job.shifted);
            double cu = job.shifted.center.u.get_d();
            double cv = job.shifted.center.v.get_d();
            long ilo = std::max<long>(0, static_cast<long>(std::floor((cu - du) * n)) - 1);
            long ihi = std::min<long>(n - 1, static_cast<long>(std::ceil((cu + du) * n)) + 1);
            long blo = std::max<long>(jlo, static_cast<long>(std::floor((cv - dv) * n)) - 1);
            long bhi = std::min<long>(jhi - 1, static_cast<long>(std::ceil((cv + dv) * n)) + 1);
            if (ilo > ihi || blo > bhi) continue;
            ScaledDisc disc(p, job.shifted, n);
            for (long j = blo; j <= bhi; ++j) {
                for (long i = ilo; i <= ihi; ++i) {
                    auto& w = result.witness[static_cast<std::size_t>(j * n + i)];
                    if (w.circle >= 0) continue;
                    if (disc.contains_cell(i, j)) w = {job.circle, job.su, job.sv};
                }
            }
        }
    };

    unsigned nw = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n)));
    if (nw == 1) {
        run_band(0, n);
    } else {
        std::vector<std::thread> pool;
        long step = (n + nw - 1) / nw;
        for (unsigned w = 0; w < nw; ++w) {
            long lo = w * step, hi = std::min(n, lo + step);
            if (lo < hi) pool.emplace_back(run_band, lo, hi);
        }
        for (auto& t : pool) t.join();
    }

    for (long j = 0; j < n; ++j)
        for (long i = 0; i < n; ++i)
            if (result.witness[static_cast<std::size_t>(j * n + i)].circle < 0)
                result.uncovered_cells.push_back({i, j});
    result.covered = result.uncovered_cells.empty();
    return result;
}

CoverResult certify_cover(const RingParams& p, const std::vector<Circle>& circles, long n,
                          long max_n, unsigned workers) {
    CoverResult r = check_cover(p, circles, n, workers);
    while (!r.covered && n * 2 <= max_n) {
        n *= 2;
        r = check_cover(p, circles, n, workers);
    }
    return r;
}

SvgFrame::SvgFrame(const RingParams& p, double extent, double margin) : margin_(margin) {
    re_omega_ = p.t / 2.0;
    im_omega_ = std::sqrt(4.0 * p.n - p.t * p.t) / 2.0;
    xmin_ = std::min(0.0, re_omega_);
    double xmax = std::max(1.0, 1.0 + re_omega_);
    ymax_ = im_omega_;
    double span = std::max(xmax - xmin_, ymax_);
    scale_ = extent / span;
    width_ = (xmax - xmin_) * scale_ + 2 * margin_;
    height_ = ymax_ * scale_ + 2 * margin_;
}

std::pair<double, double> SvgFrame::to_pixel(double x, double y) const {
    return {margin_ + (x - xmin_) * scale_, margin_ + (ymax_ - y) * scale_};
}

std::pair<double, double> SvgFrame::from_pixel(double px, double py) const {
    return {(px - margin_) / scale_ + xmin_, ymax_ - (py - margin_) / scale_};
}

std::pair<double, double> SvgFrame::to_complex(double u, double v) const {
    return {u + v * re_omega_, v * im_omega_};
}

std::string render_svg(const RingParams& p, const std::vector<Circle>& circles,
                       const CoverResult& grid) {
    SvgFrame frame(p);
    std::ostringstream svg;
    svg << std::fixed << std::setprecision(3);
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << frame.width() << "\" height=\""
        << frame.height() << "\" viewBox=\"0 0 " << frame.width() << " " << frame.height() << "\">\n";
    svg << "<title>Circles covering the fundamental domain, d = " << p.d << "</title>\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<defs><clipPath id=\"view\"><rect x=\"0\" y=\"0\" width=\"" << frame.width()
        << "\" height=\"" << frame.height() << "\"/></clipPath></defs>\n";

    auto corner = [&](double u, double v) {
        auto [x, y] = frame.to_complex(u, v);
        return frame.to_pixel(x, y);
    };

    if (grid.n > 0) {
        svg << "<g fill=\"orange\" fill-opacity=\"0.8\" stroke=\"none\">\n";
        double step = 1.0 / static_cast<double>(grid.n);
        for (const auto& cell : grid.uncovered_cells) {
            double u0 = cell.i * step, v0 = cell.j * step;
            auto a = corner(u0, v0), b = corner(u0 + step, v0), c = corner(u0 + step, v0 + step),
                 d = corner(u0, v0 + step);
            svg << "<polygon points=\"" << a.first << "," << a.second << " " << b.first << ","
                << b.second << " " << c.first << "," << c.second << " " << d.first << ","
                << d.second << "\"/>\n";
        }
        svg << "</g>\n";
    }

    svg << "<g fill=\"none\" stroke=\"steelblue\" stroke-width=\"1\" clip-path=\"url(#view)\">\n";
    for (const auto& c : circles) {
        double r = std::sqrt(c.radius_sq.get_d()) * frame.scale();
        for (auto [su, sv] : relevant_shifts(p, c)) {
            auto [x, y] = frame.to_complex(c.center.u.get_d() + su, c.center.v.get_d() + sv);
            auto [px, py] = frame.to_pixel(x, y);
            if (px + r < 0 || px - r > frame.width() || py + r < 0 || py - r > frame.height()) continue;
            svg << "<circle cx=\"" << px << "\" cy=\"" << py << "\" r=\"" << r << "\"/>\n";
        }
    }
    svg << "</g>\n";

    auto a = corner(0, 0), b = corner(1, 0), c = corner(1, 1), d = corner(0, 1);
    svg << "<polygon id=\"fundamental-domain\" points=\"" << a.first << "," << a.second << " "
        << b.first << "," << b.second << " " << c.first << "," << c.second << " " << d.first << ","
        << d.second << "\" fill=\"none\" stroke=\"red\" stroke-width=\"2\"/>\n";
    svg << "</svg>\n";
    return svg.str();
}

void render_figure(const RingParams& p, const std::vector<Circle>& circles,
                   const CoverResult& grid, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << render_svg(p, circles, grid);
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace bianchi
