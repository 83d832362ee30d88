#include "kanon/spectral.hpp"

#include "kanon/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace kanon {

std::vector<double> adjacency_matrix(const Graph& g) {
    std::size_t n = static_cast<std::size_t>(g.vertex_count());
    std::vector<double> a(n * n, 0.0);
    for (const Edge& e : g.edges()) {
        a[static_cast<std::size_t>(e.u) * n + e.v] = 1.0;
        a[static_cast<std::size_t>(e.v) * n + e.u] = 1.0;
    }
    return a;
}

std::vector<double> laplacian_matrix(const Graph& g) {
    std::size_t n = static_cast<std::size_t>(g.vertex_count());
    std::vector<double> l(n * n, 0.0);
    for (int v = 0; v < g.vertex_count(); ++v)
        l[static_cast<std::size_t>(v) * n + v] = g.degree(v);
    for (const Edge& e : g.edges()) {
        l[static_cast<std::size_t>(e.u) * n + e.v] = -1.0;
        l[static_cast<std::size_t>(e.v) * n + e.u] = -1.0;
    }
    return l;
}

EigenDecomposition jacobi_eigen(std::vector<double> a, int n, bool want_vectors) {
    EigenDecomposition out;
    out.n = n;
    if (n == 0) return out;
    std::size_t N = static_cast<std::size_t>(n);

    std::vector<double> vt;
    if (want_vectors) {
        vt.assign(N * N, 0.0);
        for (std::size_t i = 0; i < N; ++i) vt[i * N + i] = 1.0;
    }
    auto row = [&](std::vector<double>& m, int r) {
        return std::span<double>(m.data() + static_cast<std::size_t>(r) * N, N);
    };

    double norm = std::sqrt(kernels::dot({a.data(), a.size()}, {a.data(), a.size()}));
    double stop = std::max(norm * 1e-13, 1e-300);

    const int max_sweeps = 100;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                double apq = a[static_cast<std::size_t>(p) * N + q];
                off += 2 * apq * apq;
            }
        if (std::sqrt(off) <= stop) break;

        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = a[static_cast<std::size_t>(p) * N + q];
                if (std::abs(apq) <= stop / (10.0 * n)) continue;
                double app = a[static_cast<std::size_t>(p) * N + p];
                double aqq = a[static_cast<std::size_t>(q) * N + q];
                double theta = (aqq - app) / (2.0 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;

                // Rotate rows p and q, then restore the 2x2 block and mirror
                // the rows back onto the columns to keep A symmetric.
                kernels::rotate(row(a, q), row(a, p), c, s);
                double new_pp = app - t * apq;
                double new_qq = aqq + t * apq;
                a[static_cast<std::size_t>(p) * N + p] = new_pp;
                a[static_cast<std::size_t>(q) * N + q] = new_qq;
                a[static_cast<std::size_t>(p) * N + q] = 0.0;
                a[static_cast<std::size_t>(q) * N + p] = 0.0;
                for (int i = 0; i < n; ++i) {
                    if (i == p || i == q) continue;
                    a[static_cast<std::size_t>(i) * N + p] = a[static_cast<std::size_t>(p) * N + i];
                    a[static_cast<std::size_t>(i) * N + q] = a[static_cast<std::size_t>(q) * N + i];
                }
                if (want_vectors) kernels::rotate(row(vt, q), row(vt, p), c, s);
            }
        }
    }

    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int i, int j) {
        double di = a[static_cast<std::size_t>(i) * N + i];
        double dj = a[static_cast<std::size_t>(j) * N + j];
        if (di != dj) return di < dj;
        return i < j;
    });
    out.values.resize(n);
    for (int j = 0; j < n; ++j) out.values[j] = a[static_cast<std::size_t>(idx[j]) * N + idx[j]];
    if (want_vectors) {
        out.vectors.resize(N * N);
        for (int j = 0; j < n; ++j)
            std::copy_n(vt.data() + static_cast<std::size_t>(idx[j]) * N, N,
                        out.vectors.data() + static_cast<std::size_t>(j) * N);
    }
    return out;
}

namespace {

// xorshift-based deterministic start vector
std::vector<double> seeded_vector(std::size_t n, unsigned long long seed) {
    std::vector<double> v(n);
    unsigned long long s = seed;
    for (std::size_t i = 0; i < n; ++i) {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        v[i] = static_cast<double>(s % 2000003) / 2000003.0 - 0.5;
    }
    return v;
}

void normalize(std::vector<double>& v) {
    double nrm = std::sqrt(kernels::dot({v.data(), v.size()}, {v.data(), v.size()}));
    if (nrm > 0) kernels::scale({v.data(), v.size()}, 1.0 / nrm);
}

void subtract_mean(std::vector<double>& v) {
    double mean = kernels::sum({v.data(), v.size()}) / static_cast<double>(v.size());
    for (double& x : v) x -= mean;
}

} // namespace

double power_lambda_max_adjacency(const Graph& g) {
    int n = g.vertex_count();
    if (n == 0) return 0.0;
    int max_deg = 0;
    for (int v = 0; v < n; ++v) max_deg = std::max(max_deg, g.degree(v));
    if (max_deg == 0) return 0.0;
    double shift = max_deg; // makes A + shift*I positive semidefinite

    std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
    std::vector<double> w(n);
    double rho = 0.0;
    for (int iter = 0; iter < 100000; ++iter) {
        for (int i = 0; i < n; ++i) {
            double acc = shift * v[i];
            for (int nb : g.neighbors(i)) acc += v[nb];
            w[i] = acc;
        }
        double new_rho = kernels::dot({v.data(), v.size()}, {w.data(), w.size()});
        std::swap(v, w);
        normalize(v);
        if (iter > 3 && std::abs(new_rho - rho) <= 1e-10 * std::max(1.0, std::abs(new_rho))) {
            rho = new_rho;
            break;
        }
        rho = new_rho;
    }
    return rho - shift;
}

double power_lambda2_laplacian(const Graph& g) {
    int n = g.vertex_count();
    if (n <= 1) return 0.0;
    int max_deg = 0;
    for (int v = 0; v < n; ++v) max_deg = std::max(max_deg, g.degree(v));
    double shift = 2.0 * max_deg + 1.0; // >= lambda_max(L), so c*I - L is PSD

    std::vector<double> v = seeded_vector(n, 0x9e3779b97f4a7c15ULL);
    subtract_mean(v);
    normalize(v);
    std::vector<double> w(n);
    double rho = 0.0;
    for (int iter = 0; iter < 200000; ++iter) {
        // w = (shift*I - L) v = shift*v - deg*v + A*v
        for (int i = 0; i < n; ++i) {
            double acc = (shift - g.degree(i)) * v[i];
            for (int nb : g.neighbors(i)) acc += v[nb];
            w[i] = acc;
        }
        subtract_mean(w); // stay orthogonal to the all-ones eigenvector
        double new_rho = kernels::dot({v.data(), v.size()}, {w.data(), w.size()});
        std::swap(v, w);
        normalize(v);
        if (iter > 3 && std::abs(new_rho - rho) <= 1e-11 * std::max(1.0, std::abs(new_rho))) {
            rho = new_rho;
            break;
        }
        rho = new_rho;
    }
    double lambda2 = shift - rho;
    return std::max(lambda2, 0.0);
}

} // namespace kanon
