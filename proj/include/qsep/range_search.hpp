#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "qsep/hermitian_eig.hpp"
#include "qsep/plane_geometry.hpp"
#include "qsep/product_vector.hpp"

namespace qsep {

// A product vector e(t) (x) f(t) inside the range of a rank-3 PSD matrix,
// for the search parameter t on the Riemann sphere (nullopt = infinity).
// With w spanning the kernel and e = (1, t), orthogonality to w determines
// f up to phase: f = (-g_2, g_1) with g = W^dag e, W the 2x2 reshape of w.
inline product_vector product_in_range(const cmat& rho, std::optional<cx> t,
                                       const tolerance_config& tol = {}) {
    eig_result e = herm_eig(rho);
    const double thr = tol.rank_tol * std::max(1.0, e.max_value());
    int rank = 0;
    for (int k = 0; k < e.dim; ++k)
        if (e.values[k] > thr) ++rank;
    if (e.dim != 4 || rank != 3)
        throw error(errc::invalid_input,
                    "product_in_range expects a rank-3 4x4 matrix, got rank " + std::to_string(rank));

    cmat w = reshape_to_2x2(e.vectors.col(0));
    cvec ev = t ? cvec{1, *t}.normalized() : cvec{0, 1};
    cvec g = w.adjoint() * ev;
    // g = 0 makes the kernel constraint vacuous: every f keeps e (x) f in
    // the range, so return a canonical free choice instead of failing
    cvec f = g.norm() < 1e-12 ? cvec{1, 0} : cvec{-g[1], g[0]};
    product_vector out(ev, f);

    double residual = range_residual(e, out.combined(), tol.rank_tol);
    if (residual > 1e-10)
        throw error(errc::inconsistent_state,
                    "constructed vector misses the range, residual " + std::to_string(residual));
    return out;
}

namespace detail {

struct sphere_point {
    int chart;  // 0: e = (1, t); 1: e = (t, 1), so t = 0 is the point at infinity
    cx t;
};

struct range_pair_eval {
    cvec e{2}, f{2};
    cx residual;  // <u | e (x) f*> with unit factors; zero at a solution
};

class both_ranges_problem {
  public:
    both_ranges_problem(const cmat& w, const cmat& u) : w_(w), u_(u) {}

    std::optional<range_pair_eval> eval(const sphere_point& p) const {
        cvec e = p.chart == 0 ? cvec{1, p.t} : cvec{p.t, 1};
        e = e.normalized();
        cvec g = w_.adjoint() * e;
        double ng = g.norm();
        if (ng < 1e-14) return std::nullopt;
        cvec f{-g[1] / ng, g[0] / ng};
        cvec h = u_.adjoint() * e;
        return range_pair_eval{e, f, h[0] * std::conj(f[0]) + h[1] * std::conj(f[1])};
    }

    // The unnormalized residual is alpha + beta t + gamma conj(t) + delta |t|^2,
    // so its real and imaginary parts vanish on circles in the t-plane. Their
    // intersections (or, when the two circles coincide, points along the shared
    // circle) are exact zeros up to rounding and make excellent Newton seeds.
    std::vector<sphere_point> analytic_candidates(int chart) const {
        cvec e0 = chart == 0 ? cvec{1, 0} : cvec{0, 1};
        cvec e1 = chart == 0 ? cvec{0, 1} : cvec{1, 0};
        cvec g0 = w_.adjoint() * e0, g1 = w_.adjoint() * e1;
        cvec h0 = u_.adjoint() * e0, h1 = u_.adjoint() * e1;
        auto pair_term = [](const cvec& h, const cvec& g) {
            return -h[0] * std::conj(g[1]) + h[1] * std::conj(g[0]);
        };
        cx alpha = pair_term(h0, g0);
        cx beta = pair_term(h1, g0);
        cx gamma = pair_term(h0, g1);
        cx delta = pair_term(h1, g1);
        double m = std::max({std::abs(alpha), std::abs(beta), std::abs(gamma), std::abs(delta)});
        std::vector<sphere_point> out;
        auto push = [&](double x, double y) { out.push_back({chart, cx{x, y}}); };
        if (m < 1e-300) {
            push(0, 0);
            return out;
        }

        // circle_eq: c (x^2+y^2) + a x + b y + d = 0
        struct circle_eq {
            double c, a, b, d;
        };
        circle_eq re{delta.real() / m, (beta + gamma).real() / m, (gamma - beta).imag() / m,
                     alpha.real() / m};
        circle_eq im{delta.imag() / m, (beta + gamma).imag() / m, (beta - gamma).real() / m,
                     alpha.imag() / m};
        const double triv = 1e-12;
        auto trivial = [&](const circle_eq& q) {
            return std::abs(q.c) <= triv && std::abs(q.a) <= triv && std::abs(q.b) <= triv &&
                   std::abs(q.d) <= triv;
        };
        auto curve_points = [&](const circle_eq& q) {
            if (std::abs(q.c) > triv) {
                double cx0 = -q.a / (2 * q.c), cy0 = -q.b / (2 * q.c);
                double r2 = cx0 * cx0 + cy0 * cy0 - q.d / q.c;
                if (r2 >= 0) {
                    double r = std::sqrt(r2);
                    for (int k = 0; k < 8; ++k) {
                        double th = 2 * 3.141592653589793 * k / 8;
                        push(cx0 + r * std::cos(th), cy0 + r * std::sin(th));
                    }
                }
            } else {
                double n2 = q.a * q.a + q.b * q.b;
                if (n2 > triv * triv) {
                    double x0 = -q.d * q.a / n2, y0 = -q.d * q.b / n2;
                    double inv = 1.0 / std::sqrt(n2);
                    for (double s : {-2.0, -0.5, 0.0, 0.5, 2.0})
                        push(x0 - s * q.b * inv, y0 + s * q.a * inv);
                }
            }
        };
        auto line_circle = [&](double a, double b, double c, const circle_eq& q) {
            double n2 = a * a + b * b;
            if (n2 <= triv * triv) return;
            double x0 = -c * a / n2, y0 = -c * b / n2;
            double inv = 1.0 / std::sqrt(n2);
            double dx = -b * inv, dy = a * inv;
            double qa = q.c;
            double qb = 2 * q.c * (x0 * dx + y0 * dy) + q.a * dx + q.b * dy;
            double qc = q.c * (x0 * x0 + y0 * y0) + q.a * x0 + q.b * y0 + q.d;
            if (std::abs(qa) <= triv) {
                if (std::abs(qb) > triv) {
                    double s = -qc / qb;
                    push(x0 + s * dx, y0 + s * dy);
                }
                return;
            }
            double disc = qb * qb - 4 * qa * qc;
            if (disc < 0) return;
            double rr = std::sqrt(disc);
            double qq = -0.5 * (qb + (qb >= 0 ? rr : -rr));
            double s1 = qq / qa;
            push(x0 + s1 * dx, y0 + s1 * dy);
            if (std::abs(qq) > triv) {
                double s2 = qc / qq;
                push(x0 + s2 * dx, y0 + s2 * dy);
            }
        };

        if (trivial(re) && trivial(im)) {
            push(0, 0);
            push(1, 0);
            push(-1, 0);
            push(0, 1);
            push(0, -1);
        } else if (trivial(re)) {
            curve_points(im);
        } else if (trivial(im)) {
            curve_points(re);
        } else {
            // radical combination eliminates the quadratic term
            double a = im.c * re.a - re.c * im.a;
            double b = im.c * re.b - re.c * im.b;
            double c = im.c * re.d - re.c * im.d;
            if (std::abs(a) <= triv && std::abs(b) <= triv) {
                // proportional equations: the zero set is the whole circle
                if (std::abs(c) <= triv) curve_points(re);
            } else {
                line_circle(a, b, c, re);
                line_circle(a, b, c, im);
            }
        }
        return out;
    }

  private:
    cmat w_, u_;
};

}  // namespace detail

// A product vector lying simultaneously in the range of rho (as e (x) f)
// and, after conjugating the B factor, in the range of rho_pt (as e (x) f*).
// Both inputs must be PSD of rank 3. Search: coarse samples over the
// Riemann sphere (a Fibonacci spiral plus closed-form circle-intersection
// seeds) followed by damped Newton on the two real components of the
// residual <u | e (x) f*>.
inline product_vector product_in_both_ranges(const cmat& rho, const cmat& rho_pt,
                                             const tolerance_config& tol = {}) {
    constexpr int spiral_samples = 64;
    constexpr double newton_tol = 1e-12;
    constexpr int max_newton_iters = 50;
    constexpr int restarts = 8;
    constexpr double residual_cert = 1e-8;

    eig_result erho = herm_eig(rho);
    eig_result ept = herm_eig(rho_pt);
    auto rank_of = [&](const eig_result& e) {
        double thr = tol.rank_tol * std::max(1.0, e.max_value());
        int r = 0;
        for (int k = 0; k < e.dim; ++k)
            if (e.values[k] > thr) ++r;
        return r;
    };
    if (erho.dim != 4 || ept.dim != 4 || rank_of(erho) != 3 || rank_of(ept) != 3)
        throw error(errc::invalid_input, "product_in_both_ranges expects a rank-(3,3) pair");

    detail::both_ranges_problem problem(reshape_to_2x2(erho.vectors.col(0)),
                                        reshape_to_2x2(ept.vectors.col(0)));

    std::vector<detail::sphere_point> samples;
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    for (int k = 0; k < spiral_samples; ++k) {
        double z = 1.0 - 2.0 * (k + 0.5) / spiral_samples;
        double phi = 2.0 * 3.141592653589793 * k / golden;
        double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        double x = r * std::cos(phi), y = r * std::sin(phi);
        // stereographic projection, from whichever pole keeps |t| <= 1
        if (z <= 0)
            samples.push_back({0, cx{x, y} / (1.0 - z)});
        else
            samples.push_back({1, cx{x, -y} / (1.0 + z)});
    }
    samples.push_back({0, 0});
    samples.push_back({1, 0});  // infinity
    for (int chart : {0, 1})
        for (const auto& p : problem.analytic_candidates(chart)) samples.push_back(p);

    struct scored_point {
        double score;
        detail::sphere_point p;
    };
    std::vector<scored_point> scored;
    for (const auto& p : samples) {
        auto ev = problem.eval(p);
        if (!ev) continue;
        scored.push_back({std::abs(ev->residual), p});
    }
    std::sort(scored.begin(), scored.end(),
              [](const scored_point& a, const scored_point& b) { return a.score < b.score; });

    double best_seen = scored.empty() ? 1.0 : scored.front().score;

    auto finish = [&](const detail::range_pair_eval& ev) -> std::optional<product_vector> {
        product_vector pv(ev.e, ev.f);
        double r1 = range_residual(erho, pv.combined(), tol.rank_tol);
        double r2 = range_residual(ept, pv.conjugated_b().combined(), tol.rank_tol);
        if (r1 > residual_cert || r2 > residual_cert) return std::nullopt;
        return pv;
    };

    const int tries = std::min<int>(restarts, static_cast<int>(scored.size()));
    for (int attempt = 0; attempt < tries; ++attempt) {
        detail::sphere_point p = scored[attempt].p;
        for (int iter = 0; iter < max_newton_iters; ++iter) {
            auto ev = problem.eval(p);
            if (!ev) break;
            if (std::abs(ev->residual) <= newton_tol) break;
            best_seen = std::min(best_seen, std::abs(ev->residual));

            double h = 1e-7 * std::max(1.0, std::abs(p.t));
            auto evx = problem.eval({p.chart, p.t + h});
            auto evy = problem.eval({p.chart, p.t + cx{0, h}});
            if (!evx || !evy) break;
            cx dx = (evx->residual - ev->residual) / h;
            cx dy = (evy->residual - ev->residual) / h;
            // solve the 2x2 real system J * step = -residual
            double j00 = dx.real(), j01 = dy.real(), j10 = dx.imag(), j11 = dy.imag();
            double det = j00 * j11 - j01 * j10;
            if (std::abs(det) < 1e-300) break;
            double rx = -ev->residual.real(), ry = -ev->residual.imag();
            cx step{(j11 * rx - j01 * ry) / det, (j00 * ry - j10 * rx) / det};

            bool accepted = false;
            double lambda = 1.0;
            for (int halving = 0; halving < 25; ++halving) {
                detail::sphere_point cand{p.chart, p.t + lambda * step};
                auto evc = problem.eval(cand);
                if (evc && std::abs(evc->residual) < std::abs(ev->residual)) {
                    p = cand;
                    accepted = true;
                    break;
                }
                lambda /= 2;
            }
            if (!accepted) break;
            if (std::abs(p.t) > 1.5) p = {1 - p.chart, 1.0 / p.t};
        }
        auto ev = problem.eval(p);
        if (ev && std::abs(ev->residual) <= newton_tol) {
            if (auto pv = finish(*ev)) return *pv;
        }
    }
    throw error(errc::no_solution_found,
                "no product vector found in both ranges after " + std::to_string(tries) +
                    " restarts; best residual " + std::to_string(best_seen));
}

}  // namespace qsep
