#include "dirac2d/cutoff.hpp"

#include <stdexcept>
#include <string>

namespace dirac2d {

namespace {
constexpr double kPi = 3.14159265358979323846;

double glue(double u) {
    if (u <= 1e-8) return 0.0;
    return std::exp(-1.0 / u);
}
} // namespace

double smooth_step(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    double a = glue(u);
    double b = glue(1.0 - u);
    return a / (a + b);
}

double rho(double s) {
    double a = std::abs(s);
    if (a <= 1.0) return 1.0;
    if (a >= 2.0) return 0.0;
    return smooth_step(2.0 - a);
}

double chi_k(double abs_y, int k) {
    return rho(std::ldexp(abs_y, -k)) - rho(std::ldexp(abs_y, -k + 1));
}

double chi_tilde_k(double abs_y, int k) {
    return chi_k(abs_y, k - 1) + chi_k(abs_y, k) + chi_k(abs_y, k + 1);
}

double chi_leq_k(double abs_y, int k) { return rho(std::ldexp(abs_y, -k)); }

double chi_tilde_leq_k(double abs_y, int k) { return rho(std::ldexp(abs_y, -k - 1)); }

Cap::Cap(int l, int i) : level(l), index(i) {
    if (l < 1) throw std::invalid_argument("Cap: level must be >= 1");
    if (i < 0 || i >= count(l))
        throw std::invalid_argument("Cap: index " + std::to_string(i) + " out of range at level " +
                                    std::to_string(l));
}

int Cap::count(int level) {
    double want = 2.0 * kPi * std::ldexp(1.0, level);
    int n = static_cast<int>(std::lround(want));
    return n < 4 ? 4 : n;
}

double Cap::center_angle() const { return 2.0 * kPi * index / count(level); }

void Cap::center(double& c1, double& c2) const {
    double a = center_angle();
    c1 = std::cos(a);
    c2 = std::sin(a);
}

double angle_between(double a1, double a2, double b1, double b2) {
    double cross = a1 * b2 - a2 * b1;
    double dot = a1 * b1 + a2 * b2;
    return std::abs(std::atan2(cross, dot));
}

namespace {

double wrap_angle(double d) {
    d = std::fmod(d, 2.0 * kPi);
    if (d > kPi) d -= 2.0 * kPi;
    if (d < -kPi) d += 2.0 * kPi;
    return d;
}

// raw (unnormalized) bump of cap i at angle theta; plateau out to
// 3/8 of the spacing, support out to 3/4 of the spacing (the 3/2 Gamma cone)
double raw_bump(int level, int i, double theta) {
    int n = Cap::count(level);
    double spacing = 2.0 * kPi / n;
    double d = std::abs(wrap_angle(theta - 2.0 * kPi * i / n));
    return rho(d / (0.375 * spacing));
}

// the eta-tilde profile: 1 on the 3/2 cone, 0 outside the 2 cone
double tilde_profile(int level, int i, double theta) {
    int n = Cap::count(level);
    double spacing = 2.0 * kPi / n;
    double d = std::abs(wrap_angle(theta - 2.0 * kPi * i / n));
    double a = 0.75 * spacing, b = spacing;
    if (d <= a) return 1.0;
    if (d >= b) return 0.0;
    return smooth_step((b - d) / (b - a));
}

} // namespace

double eta_cap(const Cap& cap, double xi1, double xi2) {
    if (xi1 == 0.0 && xi2 == 0.0) return 0.0;
    double theta = std::atan2(xi2, xi1);
    double num = raw_bump(cap.level, cap.index, theta);
    if (num == 0.0) return 0.0;
    int n = Cap::count(cap.level);
    double spacing = 2.0 * kPi / n;
    // only immediate neighbors can contribute to the local sum
    int i0 = static_cast<int>(std::floor(theta / spacing));
    double den = 0.0;
    for (int di = -1; di <= 2; ++di) {
        int i = ((i0 + di) % n + n) % n;
        den += raw_bump(cap.level, i, theta);
    }
    return num / den;
}

double eta_tilde_cap(const Cap& cap, double xi1, double xi2) {
    if (xi1 == 0.0 && xi2 == 0.0) return 0.0;
    double theta = std::atan2(xi2, xi1);
    return tilde_profile(cap.level, cap.index, theta);
}

std::vector<Cap> caps_near_angle(int level, double theta) {
    int n = Cap::count(level);
    double spacing = 2.0 * kPi / n;
    int i0 = static_cast<int>(std::floor(theta / spacing));
    std::vector<Cap> out;
    for (int di = -1; di <= 2; ++di) out.emplace_back(level, ((i0 + di) % n + n) % n);
    return out;
}

double alpha_slice(int j, int width_log2, double s) {
    double w = std::ldexp(1.0, -width_log2);
    double u = s / w - j; // support |u| < 1
    if (u <= -1.0 || u >= 1.0) return 0.0;
    // smooth tent pair: rises on [-1,0], falls on [0,1]; consecutive
    // slices sum to one because S(u) + S(1-u) = 1
    return u < 0.0 ? smooth_step(u + 1.0) : smooth_step(1.0 - u);
}

int slice_j_min(int width_log2) { return (1 << (width_log2 - 2)) - 1; }
int slice_j_max(int width_log2) { return (1 << (width_log2 + 2)) + 1; }

} // namespace dirac2d
