#include "multent/partitions.hpp"

#include <algorithm>
#include <cmath>

namespace multent {

namespace {

void check_modulus(int p) {
    if (p < 2) throw BadInput("partitions: modulus must be >= 2");
}

// {1, p, p^2, ...} up to limit
std::vector<long long> single_parts(int p, long long limit) {
    std::vector<long long> parts = {1};
    for (long long v = p; v <= limit; v *= p) {
        parts.push_back(v);
        if (v > limit / p) break;
    }
    return parts;
}

// {p - 1, p^2 - 1, ...} up to limit
std::vector<long long> axis_parts(int p, long long limit) {
    std::vector<long long> parts;
    for (long long v = p; v - 1 <= limit; v *= p) {
        parts.push_back(v - 1);
        if (v > (limit + 1) / p) break;
    }
    return parts;
}

} // namespace

SingleCompositionSet enumerate_single(int p, long long n, long long cap) {
    check_modulus(p);
    if (n < 1) throw BadInput("enumerate_single: n must be positive");
    if (n > cap) throw CapExceeded("enumerate_single: n over enumeration cap");

    SingleCompositionSet out;
    out.p = p;
    out.n = n;
    auto parts = single_parts(p, n);
    SingleComposition cur;
    auto rec = [&](auto&& self, long long remaining) -> void {
        if (remaining == 0) {
            out.parts_lists.push_back(cur);
            return;
        }
        for (long long v : parts) {
            if (v > remaining) break;
            cur.push_back(v);
            self(self, remaining - v);
            cur.pop_back();
        }
    };
    rec(rec, n);
    std::sort(out.parts_lists.begin(), out.parts_lists.end());
    return out;
}

AlternatingCompositionSet enumerate_alternating(int p1, int p2, long long n, long long cap) {
    check_modulus(p1);
    check_modulus(p2);
    if (n < 1) throw BadInput("enumerate_alternating: n must be positive");
    if (n > cap) throw CapExceeded("enumerate_alternating: n over enumeration cap");

    AlternatingCompositionSet out;
    out.p1 = p1;
    out.p2 = p2;
    out.n = n;
    const std::vector<long long> parts[2] = {axis_parts(p1, n), axis_parts(p2, n)};
    AlternatingComposition cur;
    auto rec = [&](auto&& self, long long remaining, int axis) -> void {
        if (remaining == 0) {
            out.parts_lists.push_back(cur);
            return;
        }
        for (long long v : parts[axis - 1]) {
            if (v > remaining) break;
            cur.push_back({axis, v});
            self(self, remaining - v, 3 - axis);
            cur.pop_back();
        }
    };
    rec(rec, n, 1);
    rec(rec, n, 2);
    std::sort(out.parts_lists.begin(), out.parts_lists.end());
    return out;
}

BigInt count_single(int p, long long n) {
    check_modulus(p);
    if (n < 1) throw BadInput("count_single: n must be positive");
    if (n > 10000) throw CapExceeded("count_single: n over cap 10^4");
    auto parts = single_parts(p, n);
    std::vector<BigInt> c(std::size_t(n) + 1, 0);
    c[0] = 1;
    for (long long m = 1; m <= n; ++m)
        for (long long v : parts) {
            if (v > m) break;
            c[m] += c[m - v];
        }
    return c[n];
}

BigInt count_alternating(int p1, int p2, long long n) {
    check_modulus(p1);
    check_modulus(p2);
    if (n < 1) throw BadInput("count_alternating: n must be positive");
    if (n > 10000) throw CapExceeded("count_alternating: n over cap 10^4");
    const std::vector<long long> parts[2] = {axis_parts(p1, n), axis_parts(p2, n)};
    // f[m][a] = compositions of m whose last part is on axis a+1
    std::vector<std::array<BigInt, 2>> f(std::size_t(n) + 1);
    for (long long m = 1; m <= n; ++m) {
        for (int a = 0; a < 2; ++a) {
            BigInt total = 0;
            for (long long v : parts[a]) {
                if (v > m) break;
                if (v == m)
                    total += 1;
                else
                    total += f[m - v][1 - a];
            }
            f[m][a] = std::move(total);
        }
    }
    return f[n][0] + f[n][1];
}

std::vector<BigInt> GrowthModel::a_of(long long n_max) const {
    std::vector<BigInt> a(std::size_t(std::max<long long>(n_max, 2)) + 1);
    a[0] = 1;
    a[1] = 1;
    a[2] = 3;
    for (long long k = 3; k <= n_max; ++k) a[k] = a[k - 1] + 2 * a[k - 2] - a[k - 3];
    a.resize(std::size_t(n_max) + 1);
    return a;
}

GrowthModel growth_model() {
    // x^3 - 2x^2 - x + 1: three real roots; trigonometric solution of the
    // depressed cubic, then one Newton step each.
    const double a = -2.0, b = -1.0, c = 1.0;
    const double pp = b - a * a / 3.0;
    const double qq = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    const double mag = 2.0 * std::sqrt(-pp / 3.0);
    const double phi = std::acos(std::clamp(3.0 * qq / (pp * mag), -1.0, 1.0)) / 3.0;

    std::vector<double> roots;
    for (int k = 0; k < 3; ++k) {
        double x = mag * std::cos(phi - 2.0 * M_PI * k / 3.0) - a / 3.0;
        double fx = ((x + a) * x + b) * x + c;
        double dfx = (3.0 * x + 2.0 * a) * x + b;
        roots.push_back(x - fx / dfx);
    }
    std::sort(roots.begin(), roots.end());

    GrowthModel g;
    g.roots = roots;
    double xmin = roots[0];
    for (double r : roots)
        if (std::abs(r) < std::abs(xmin)) xmin = r;
    g.B = 1.0 / std::abs(xmin);
    return g;
}

} // namespace multent
